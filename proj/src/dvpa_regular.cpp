#include "wordrel/dvpa_regular.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "wordrel/oracles.hpp"

namespace wordrel {

std::vector<Letter> config_letters(const Dvpa& d) {
  std::set<Letter> stack(d.stack.begin(), d.stack.end());
  bool clash = false;
  for (const auto& n : d.names) clash = clash || stack.count(n);
  std::vector<Letter> r;
  for (const auto& n : d.names) r.push_back(clash ? "@" + n : n);
  r.insert(r.end(), d.stack.begin(), d.stack.end());
  return r;
}

std::vector<Letter> config_word(const Dvpa& d, const Configuration& c) {
  auto l = config_letters(d);
  std::vector<Letter> w{l.at(c.state)};
  for (int g : c.stack) w.push_back(l.at(d.size() + g));
  return w;
}

std::optional<Configuration> config_of_word(const Dvpa& d, const std::vector<Letter>& w) {
  auto l = config_letters(d);
  auto index = [&](const Letter& x) {
    return static_cast<int>(std::find(l.begin(), l.end(), x) - l.begin());
  };
  if (w.empty()) return std::nullopt;
  Configuration c;
  c.state = index(w[0]);
  if (c.state >= d.size()) return std::nullopt;
  for (std::size_t i = 1; i < w.size(); ++i) {
    int g = index(w[i]) - d.size();
    if (g < 0 || g >= static_cast<int>(d.stack.size())) return std::nullopt;
    c.stack.push_back(g);
  }
  return c;
}

Nfa reachable_configs(const Dvpa& d) {
  ConfigAutomaton post = post_star(d, single_config(d, {d.initial, {}}));
  const int n = d.size();
  Nfa r(Alphabet::atomic(config_letters(d)));
  int start = r.add_state(false);
  r.add_initial(start);
  for (int s = 0; s < post.nfa.size(); ++s) r.add_state(post.nfa.accepting[s]);
  for (int s = 0; s < post.nfa.size(); ++s)
    for (const auto& e : post.nfa.out[s])
      r.add_edge(s + 1, e.sym == kEpsilon ? kEpsilon : n + e.sym, e.to + 1);
  for (int p = 0; p < n; ++p) r.add_edge(start, p, post.entry[p] + 1);
  return trim(eliminate_epsilon(r));
}

long long depth_bound(const Dvpa& d) {
  long long n = d.size();
  return n * n * n + 1;
}

namespace {

// Two independent languages read in lockstep with tail padding.
SyncTransducer cartesian(const Nfa& a, const Nfa& b) {
  Tapes tapes{a.alphabet.components()[0], b.alphabet.components()[0]};
  SyncTransducer t(tapes);
  const Alphabet& al = t.nfa.alphabet;
  const int da = a.size(), db = b.size();  // "done" markers
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> work;
  auto acc = [&](int x, int y) {
    return (x == da || a.accepting[x]) && (y == db || b.accepting[y]);
  };
  auto intern = [&](int x, int y) {
    auto [it, fresh] = ids.emplace(std::make_pair(x, y), t.nfa.size());
    if (fresh) {
      t.nfa.add_state(acc(x, y));
      work.push_back({x, y});
    }
    return it->second;
  };
  for (int x : a.initial)
    for (int y : b.initial) t.nfa.add_initial(intern(x, y));
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    int src = ids.at({x, y});
    // tape 1 letter, or pad once tape 1 may end here
    std::vector<std::pair<Letter, int>> left, right;
    if (x < da)
      for (const auto& e : a.out[x]) left.push_back({a.alphabet.symbol(e.sym)[0], e.to});
    if (x == da || a.accepting[x]) left.push_back({kPad, da});
    if (y < db)
      for (const auto& e : b.out[y]) right.push_back({b.alphabet.symbol(e.sym)[0], e.to});
    if (y == db || b.accepting[y]) right.push_back({kPad, db});
    for (const auto& [la, xa] : left)
      for (const auto& [lb, yb] : right) {
        if (la == kPad && lb == kPad) continue;
        t.nfa.add_edge(src, al.at(Symbol{la, lb}), intern(xa, yb));
      }
  }
  return t;
}

// Precomputed pair relations of a complete deterministic VPA for the separator search.
class NeqTables {
 public:
  NeqTables(const Dvpa& dc, WmMethod method)
      : n_(dc.size()),
        ng_(static_cast<int>(dc.stack.size())),
        nr_(static_cast<int>(dc.returns.size())) {
    VpaIndex idx(dc);
    pop_.resize(static_cast<std::size_t>(n_) * nr_ * (ng_ + 1));
    for (int p = 0; p < n_; ++p)
      for (int r = 0; r < nr_; ++r)
        for (int g = kBottom; g < ng_; ++g) pop_[(p * nr_ + r) * (ng_ + 1) + g + 1] = idx.pop_target(p, r, g);
    auto wm = well_matched_pairs(dc, method);
    const int np = n_ * n_;
    wm_list_.resize(np);
    for (int x = 0; x < np; ++x)
      for (int y = 0; y < np; ++y)
        if (wm[x][y]) wm_list_[x].push_back(y);

    // Return-free continuations: well-matched summaries and unmatched calls.
    std::vector<std::vector<int>> back(np);
    for (int x = 0; x < np; ++x) {
      for (int y : wm_list_[x]) back[y].push_back(x);
      int p = x / n_, q = x % n_, g;
      for (int c = 0; c < static_cast<int>(dc.calls.size()); ++c)
        back[idx.push_target(p, c, &g) * n_ + idx.push_target(q, c, &g)].push_back(x);
    }
    std::vector<int> xors;
    for (int x = 0; x < np; ++x)
      if (dc.accepting[x / n_] != dc.accepting[x % n_]) xors.push_back(x);
    zx_ = reachable_from(back, xors);

    // Both stacks empty: well-matched word, then a common bottom pop.
    std::vector<std::vector<int>> bback(np);
    for (int x = 0; x < np; ++x)
      for (int y : wm_list_[x])
        for (int r = 0; r < nr_; ++r) bback[pop(y / n_, r, kBottom) * n_ + pop(y % n_, r, kBottom)].push_back(x);
    std::vector<int> seeds;
    for (int x = 0; x < np; ++x)
      if (zx_[x]) seeds.push_back(x);
    sep0_ = reachable_from(bback, seeds);
  }

  int pop(int p, int r, int g) const { return pop_[(p * nr_ + r) * (ng_ + 1) + g + 1]; }
  bool zx(int x) const { return zx_[x] != 0; }
  bool sep0(int x) const { return sep0_[x] != 0; }

  // Pairs reached from x by a well-matched word and one return popping mu / nu
  // (kBottom when that stack is exhausted).
  const std::vector<int>& step(int x, int mu, int nu) {
    std::uint64_t key = (static_cast<std::uint64_t>(x) * (ng_ + 1) + (mu + 1)) * (ng_ + 1) + (nu + 1);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<int> r;
    for (int y : wm_list_[x])
      for (int ret = 0; ret < nr_; ++ret) r.push_back(pop(y / n_, ret, mu) * n_ + pop(y % n_, ret, nu));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return cache_.emplace(key, std::move(r)).first->second;
  }

 private:
  int n_, ng_, nr_;
  std::vector<int> pop_;
  std::vector<std::vector<int>> wm_list_;
  std::vector<char> zx_, sep0_;
  std::unordered_map<std::uint64_t, std::vector<int>> cache_;
};

}  // namespace

SyncTransducer reachable_pairs(const Dvpa& d) {
  Nfa c = reachable_configs(d);
  return cartesian(c, c);
}

SyncTransducer deep_equal_checker(const Dvpa& d, long long depth) {
  if (depth < 0) depth = depth_bound(d);
  check_budget(static_cast<std::size_t>(depth), state_budget(), "deep_equal_checker");
  const int m = static_cast<int>(depth);
  auto l = config_letters(d);
  const int n = d.size(), ng = static_cast<int>(d.stack.size());
  SyncTransducer t(Tapes{l, l});
  const Alphabet& al = t.nfa.alphabet;
  auto sym = [&](const Letter& x, const Letter& y) { return al.at(Symbol{x, y}); };
  int start = t.nfa.add_state(false, "start");
  t.nfa.add_initial(start);
  std::vector<int> common;  // common[k]: k equal stack letters read
  for (int k = 0; k <= m; ++k) common.push_back(t.nfa.add_state(false, "eq" + std::to_string(k)));
  int diff = t.nfa.add_state(true, "diff");
  int left = t.nfa.add_state(true, "left_longer");
  int right = t.nfa.add_state(true, "right_longer");
  for (int p = 0; p < n; ++p) t.nfa.add_edge(start, sym(l[p], l[p]), common[0]);
  for (int g = 0; g < ng; ++g) {
    const Letter& a = l[n + g];
    for (int k = 0; k < m; ++k) t.nfa.add_edge(common[k], sym(a, a), common[k + 1]);
    t.nfa.add_edge(common[m], sym(a, a), common[m]);
    for (int h = 0; h < ng; ++h) {
      if (h != g) t.nfa.add_edge(common[m], sym(a, l[n + h]), diff);
      t.nfa.add_edge(diff, sym(a, l[n + h]), diff);
    }
    for (int from : {common[m], diff, left}) t.nfa.add_edge(from, sym(a, kPad), left);
    for (int from : {common[m], diff, right}) t.nfa.add_edge(from, sym(kPad, a), right);
  }
  return t;
}

SyncTransducer nonequiv_transducer(const Dvpa& d, WmMethod wm) {
  Dvpa dc = complete_dvpa(d);
  NeqTables tab(dc, wm);
  auto l = config_letters(d);
  const int n = d.size(), nc = dc.size(), ng = static_cast<int>(d.stack.size());
  SyncTransducer t(Tapes{l, l});
  const Alphabet& al = t.nfa.alphabet;
  auto letter = [&](int g) { return g == kBottom ? kPad : l[n + g]; };
  int start = t.nfa.add_state(false, "start");
  t.nfa.add_initial(start);
  std::vector<int> qf;
  for (int b = 0; b < 4; ++b) qf.push_back(t.nfa.add_state(true, "final" + std::to_string(b)));
  const int base = t.nfa.size();
  for (int x = 0; x < nc * nc; ++x)
    for (int b = 0; b < 4; ++b)
      t.nfa.add_state(tab.sep0(x), dc.names[x / nc] + "|" + dc.names[x % nc] + "/" + std::to_string(b));
  auto pair_state = [&](int x, int bits) { return base + 4 * x + bits; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) t.nfa.add_edge(start, al.at(Symbol{l[p], l[q]}), pair_state(p * nc + q, 0));
  for (int bits = 0; bits < 4; ++bits) {
    const bool i = bits & 2, j = bits & 1;
    for (int mu = kBottom; mu < ng; ++mu)
      for (int nu = kBottom; nu < ng; ++nu) {
        if (mu == kBottom && nu == kBottom) continue;
        if ((i && mu != kBottom) || (j && nu != kBottom)) continue;
        int nb = (mu == kBottom ? 2 : 0) | (nu == kBottom ? 1 : 0);
        int s = al.at(Symbol{letter(mu), letter(nu)});
        t.nfa.add_edge(qf[bits], s, qf[nb]);
        for (int x = 0; x < nc * nc; ++x) {
          for (int y : tab.step(x, mu, nu)) t.nfa.add_edge(pair_state(x, bits), s, pair_state(y, nb));
          if (tab.zx(x)) t.nfa.add_edge(pair_state(x, bits), s, qf[nb]);
        }
      }
  }
  return t;
}

namespace {

// Demand-driven well-matched summaries of two copies of a complete DVPA, with derivations
// so that every derived pair comes with a word.  Pairs are p * n + q.
class LazyPairs {
 public:
  explicit LazyPairs(const Dvpa& dc)
      : idx_(dc),
        n_(dc.size()),
        nc_(static_cast<int>(dc.calls.size())),
        nr_(static_cast<int>(dc.returns.size())),
        ni_(static_cast<int>(dc.internals.size())),
        acc_(dc.accepting),
        zx_(static_cast<std::size_t>(n_) * n_, -1),
        sep0_(zx_.size(), -1) {}

  int returns() const { return nr_; }
  int pop(int p, int r, int g) const { return idx_.pop_target(p, r, g); }
  int pop_pair(int x, int r, int mu, int nu) const { return pop(x / n_, r, mu) * n_ + pop(x % n_, r, nu); }
  int push_pair(int x, int c, int* g1, int* g2) const {
    return idx_.push_target(x / n_, c, g1) * n_ + idx_.push_target(x % n_, c, g2);
  }
  int int_pair(int x, int a) const { return idx_.int_target(x / n_, a) * n_ + idx_.int_target(x % n_, a); }
  bool xor_pair(int x) const { return acc_[x / n_] != acc_[x % n_]; }

  // Pairs reachable from x by a common well-matched word.
  const std::vector<int>& wm(int x) {
    demand(x);
    saturate();
    return sum_.at(x).list;
  }

  // Pairs reached by a well-matched word and one return popping mu / nu.
  const std::vector<int>& step(int x, int mu, int nu) {
    auto key = std::make_tuple(x, mu, nu);
    auto it = steps_.find(key);
    if (it != steps_.end()) return it->second;
    std::vector<int> r;
    for (int y : wm(x))
      for (int ret = 0; ret < nr_; ++ret) r.push_back(pop_pair(y, ret, mu, nu));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return steps_.emplace(key, std::move(r)).first->second;
  }

  // A word that moves x to y and one return letter r with pop_pair(y, r, mu, nu) == target.
  std::optional<Word> step_word(int x, int mu, int nu, int target, std::size_t cap) {
    for (int y : wm(x))
      for (int ret = 0; ret < nr_; ++ret)
        if (pop_pair(y, ret, mu, nu) == target) {
          Word w;
          if (!append_wm(x, y, w, cap)) return std::nullopt;
          w.push_back(nc_ + ret);
          return w;
        }
    throw std::logic_error("is_regular: step without derivation");
  }

  bool zx(int x) {
    if (zx_[x] < 0) zx_search(x, nullptr, 0);
    return zx_[x] != 0;
  }
  bool sep0(int x) {
    if (sep0_[x] < 0) sep0_search(x, nullptr, 0);
    return sep0_[x] != 0;
  }
  // Return-free word from x to a pair that differs in acceptance.
  std::optional<Word> zx_word(int x, std::size_t cap) {
    Word w;
    if (!zx_search(x, &w, cap)) return std::nullopt;
    return w;
  }
  // Word from x on two empty stacks to a pair that differs in acceptance.
  std::optional<Word> sep0_word(int x, std::size_t cap) {
    Word w;
    if (!sep0_search(x, &w, cap)) return std::nullopt;
    return w;
  }

  std::size_t entries() const { return entries_; }

 private:
  struct Deriv {
    int prev = -1;  // -1 at the root
    int kind = 0;   // 1 internal, 2 call / inner / return
    int letter = 0, inner = 0, ret = 0;
  };
  struct Summary {
    std::unordered_map<int, Deriv> reach;
    std::vector<int> list;
  };
  struct Caller {
    int x, y, call, g1, g2;
  };

  void demand(int x) {
    if (sum_.count(x)) return;
    sum_[x];
    add(x, x, Deriv{});
  }

  void add(int x, int y, const Deriv& d) {
    auto& s = sum_.at(x);
    if (!s.reach.emplace(y, d).second) return;
    s.list.push_back(y);
    check_budget(++entries_, state_budget(), "is_regular summaries");
    work_.push_back({x, y});
  }

  void saturate() {
    while (!work_.empty()) {
      auto [x, y] = work_.front();
      work_.pop_front();
      for (int a = 0; a < ni_; ++a) add(x, int_pair(y, a), Deriv{y, 1, a, 0, 0});
      for (int c = 0; c < nc_; ++c) {
        int g1, g2;
        int z = push_pair(y, c, &g1, &g2);
        demand(z);
        callers_[z].push_back({x, y, c, g1, g2});
        std::vector<int> inner = sum_.at(z).list;  // add() may grow it
        for (int w : inner)
          for (int r = 0; r < nr_; ++r) add(x, pop_pair(w, r, g1, g2), Deriv{y, 2, c, w, r});
      }
      auto it = callers_.find(x);
      if (it != callers_.end()) {
        std::vector<Caller> cs = it->second;
        for (const auto& k : cs)
          for (int r = 0; r < nr_; ++r) add(k.x, pop_pair(y, r, k.g1, k.g2), Deriv{k.y, 2, k.call, y, r});
      }
    }
  }

  bool append_wm(int x, int y, Word& out, std::size_t cap) {
    std::vector<const Deriv*> chain;
    const auto& reach = sum_.at(x).reach;
    for (int cur = y;;) {
      const Deriv& d = reach.at(cur);
      if (d.prev < 0) break;
      chain.push_back(&d);
      cur = d.prev;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Deriv& d = **it;
      if (d.kind == 1) {
        out.push_back(nc_ + nr_ + d.letter);
      } else {
        int g1, g2;
        int z = push_pair(d.prev, d.letter, &g1, &g2);
        out.push_back(d.letter);
        if (!append_wm(z, d.inner, out, cap)) return false;
        out.push_back(nc_ + d.ret);
      }
      if (out.size() > cap) return false;
    }
    return true;
  }

  // Return-free moves: internal letters, matched blocks, and unmatched calls.
  template <class F>
  void return_free_edges(int y, F&& f) {
    for (int a = 0; a < ni_; ++a) f(int_pair(y, a), 1, a, 0, 0);
    for (int c = 0; c < nc_; ++c) {
      int g1, g2;
      int z = push_pair(y, c, &g1, &g2);
      f(z, 3, c, 0, 0);
      for (int w : wm(z))
        for (int r = 0; r < nr_; ++r) f(pop_pair(w, r, g1, g2), 2, c, w, r);
    }
  }

  struct Edge {
    int from, kind, letter, inner, ret;
  };

  // Breadth-first search from x until `goal`; memoizes negative answers for the whole
  // explored region and positive answers along the found path.
  template <class Edges, class Goal>
  int search(int x, std::vector<signed char>& memo, Edges&& edges, Goal&& goal, Word* out,
              std::size_t cap) {
    std::unordered_map<int, Edge> parent{{x, Edge{-1, 0, 0, 0, 0}}};
    std::deque<int> q{x};
    int hit = -1;
    while (!q.empty() && hit < 0) {
      int y = q.front();
      q.pop_front();
      if (goal(y)) {
        hit = y;
        break;
      }
      if (memo[y] == 0 && y != x) continue;
      edges(y, [&](int to, int kind, int letter, int inner, int ret) {
        if (parent.emplace(to, Edge{y, kind, letter, inner, ret}).second) q.push_back(to);
      });
    }
    if (hit < 0) {
      for (const auto& [y, e] : parent) memo[y] = 0;
      return -1;
    }
    std::vector<std::pair<int, Edge>> path;
    for (int y = hit; parent.at(y).from >= 0; y = parent.at(y).from) path.push_back({y, parent.at(y)});
    memo[x] = 1;
    for (const auto& pe : path) memo[pe.second.from] = 1;
    if (!out) return hit;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Edge& e = it->second;
      if (e.kind == 1) {
        out->push_back(nc_ + nr_ + e.letter);
      } else if (e.kind == 3) {
        out->push_back(e.letter);
      } else if (e.kind == 2) {
        int g1, g2;
        int z = push_pair(e.from, e.letter, &g1, &g2);
        out->push_back(e.letter);
        if (!append_wm(z, e.inner, *out, cap)) return -2;
        out->push_back(nc_ + e.ret);
      } else {
        if (!append_wm(e.from, e.inner, *out, cap)) return -2;
        out->push_back(nc_ + e.ret);
      }
      if (out->size() > cap) return -2;
    }
    return hit;
  }

  bool zx_search(int x, Word* out, std::size_t cap) {
    return search(
               x, zx_, [&](int y, auto&& f) { return_free_edges(y, f); },
               [&](int y) { return xor_pair(y); }, out, cap) >= 0;
  }

  // A well-matched word and a common bottom pop, repeated, then a return-free tail.
  bool sep0_search(int x, Word* out, std::size_t cap) {
    auto edges = [&](int y, auto&& f) {
      for (int w : wm(y))
        for (int r = 0; r < nr_; ++r) f(pop_pair(w, r, kBottom, kBottom), 4, 0, w, r);
    };
    int hit = search(x, sep0_, edges, [&](int y) { return zx(y); }, out, cap);
    if (hit < 0 || !out) return hit >= 0;
    return zx_search(hit, out, cap);
  }

  VpaIndex idx_;
  int n_, nc_, nr_, ni_;
  std::vector<char> acc_;
  std::unordered_map<int, Summary> sum_;
  std::unordered_map<int, std::vector<Caller>> callers_;
  std::deque<std::pair<int, int>> work_;
  std::map<std::tuple<int, int, int>, std::vector<int>> steps_;
  std::vector<signed char> zx_, sep0_;
  std::size_t entries_ = 0;
};

}  // namespace

PairVerdict is_regular(const Dvpa& d, const RegularityOptions& opt) {
  d.validate();
  if (!d.deterministic()) throw InputError("is_regular: automaton is not deterministic");
  Dvpa dc = complete_dvpa(d);
  PairVerdict v;
  const int n = dc.size(), ng = static_cast<int>(dc.stack.size());
  v.states = n;
  v.m = depth_bound(dc);
  const long long m = v.m;
  const std::size_t budget = state_budget();

  Dfa cfg = determinize(reachable_configs(dc), budget);
  std::vector<std::vector<int>> g(cfg.num_states);
  std::vector<int> acc;
  for (int s = 0; s < cfg.num_states; ++s) {
    if (cfg.accepting[s]) acc.push_back(s);
    for (int a = 0; a < cfg.alphabet.size(); ++a) g[s].push_back(cfg.next(s, a));
  }
  auto live = reachable_from(reverse_graph(g), acc);
  LazyPairs pairs(dc);

  // Common prefix: both copies read the same state and stack letters, so they share the
  // automaton state and the simulated pair stays on the diagonal.  Layer k holds nodes
  // s*n + p after k stack letters.
  auto layer_step = [&](const std::vector<int>& cur, auto&& emit) {
    for (int node : cur) {
      int s = node / n, p = node % n;
      for (int gg = 0; gg < ng; ++gg) {
        int s2 = cfg.next(s, n + gg);
        if (!live[s2]) continue;
        for (int y : pairs.step(p * n + p, gg, gg)) emit(node, gg, s2 * n + y / n);
      }
    }
  };
  std::vector<std::vector<int>> layers;
  {
    std::vector<int> l0;
    for (int p = 0; p < n; ++p) {
      int s = cfg.next(cfg.initial, p);
      if (live[s]) l0.push_back(s * n + p);
    }
    std::sort(l0.begin(), l0.end());
    layers.push_back(std::move(l0));
  }
  std::map<std::vector<int>, int> first_seen;
  int rep_from = -1, rep_to = -1;  // layers[rep_to] == layers[rep_from]
  std::size_t total = 0;
  while (true) {
    const auto& cur = layers.back();
    if (cur.empty()) break;
    auto [it, fresh] = first_seen.emplace(cur, static_cast<int>(layers.size()) - 1);
    if (!fresh) {
      rep_from = it->second;
      rep_to = static_cast<int>(layers.size()) - 1;
      break;
    }
    total += cur.size();
    check_budget(total, budget, "is_regular layers");
    std::vector<int> next;
    layer_step(cur, [&](int, int, int to) { next.push_back(to); });
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layers.push_back(std::move(next));
  }
  auto layer_index = [&](long long k) -> int {
    if (rep_from < 0 || k < rep_to) return static_cast<int>(k);
    return rep_from + static_cast<int>((k - rep_from) % (rep_to - rep_from));
  };
  // Nodes at depth >= m, each with the smallest such depth.
  std::map<int, long long> deep;
  {
    long long last = rep_from < 0 ? static_cast<long long>(layers.size()) - 1
                                  : std::max<long long>(m, rep_from) + (rep_to - rep_from);
    for (long long k = m; k < last; ++k)
      for (int node : layers[layer_index(k)]) deep.emplace(node, k);
  }
  v.explored = total;
  if (deep.empty()) {
    v.detail = "no reachable configuration has " + std::to_string(m) + " stack letters";
    return v;
  }

  // Divergence: independent automaton states (cfg.num_states = tape finished), the pair of
  // simulated states (or the final mark once a return-free separator is guessed), and
  // whether the words differ yet.
  const int done = cfg.num_states, qf = n * n;
  struct Node {
    int s1, s2, x, diff;
    bool operator<(const Node& o) const {
      return std::tie(s1, s2, x, diff) < std::tie(o.s1, o.s2, o.x, o.diff);
    }
  };
  std::map<Node, int> ids;
  std::vector<Node> nodes;
  std::vector<int> parent;
  std::vector<std::pair<int, int>> label;  // (mu, nu), kBottom for pad
  std::vector<int> origin;                  // phase A node for roots
  std::deque<int> work;
  auto intern = [&](const Node& nd, int par, std::pair<int, int> lab, int org) {
    auto [it, fresh] = ids.emplace(nd, static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back(nd);
      parent.push_back(par);
      label.push_back(lab);
      origin.push_back(org);
      work.push_back(it->second);
      check_budget(nodes.size() + total, budget, "is_regular divergence search");
    }
  };
  // Roots in order of depth so the witness prefers short common tops.
  std::vector<std::pair<long long, int>> roots;
  for (auto [node, k] : deep) roots.push_back({k, node});
  std::sort(roots.begin(), roots.end());
  for (auto [k, node] : roots) {
    int s = node / n, p = node % n;
    intern({s, s, p * n + p, 0}, -1, {0, 0}, node);
  }
  int found = -1;
  while (!work.empty() && found < 0) {
    int id = work.front();
    work.pop_front();
    Node nd = nodes[id];
    bool end1 = nd.s1 == done || cfg.accepting[nd.s1];
    bool end2 = nd.s2 == done || cfg.accepting[nd.s2];
    if (end1 && end2 && nd.diff && (nd.x == qf || pairs.sep0(nd.x))) {
      found = id;
      break;
    }
    const bool to_final = nd.x != qf && pairs.zx(nd.x);
    for (int mu = kBottom; mu < ng; ++mu) {
      int t1;
      if (mu == kBottom) {
        if (!end1) continue;
        t1 = done;
      } else {
        if (nd.s1 == done) continue;
        t1 = cfg.next(nd.s1, n + mu);
        if (!live[t1]) continue;
      }
      for (int nu = kBottom; nu < ng; ++nu) {
        if (mu == kBottom && nu == kBottom) continue;
        int t2;
        if (nu == kBottom) {
          if (!end2) continue;
          t2 = done;
        } else {
          if (nd.s2 == done) continue;
          t2 = cfg.next(nd.s2, n + nu);
          if (!live[t2]) continue;
        }
        int df = nd.diff || mu != nu;
        if (nd.x == qf) {
          intern({t1, t2, qf, df}, id, {mu, nu}, -1);
          continue;
        }
        for (int y : pairs.step(nd.x, mu, nu)) intern({t1, t2, y, df}, id, {mu, nu}, -1);
        if (to_final) intern({t1, t2, qf, df}, id, {mu, nu}, -1);
      }
    }
  }
  v.explored = total + nodes.size() + pairs.entries();
  if (found < 0) {
    v.detail = "deep configurations are pairwise equivalent";
    return v;
  }

  v.holds = false;
  std::vector<int> path;  // phase B nodes, root first
  for (int id = found; id >= 0; id = parent[id]) path.push_back(id);
  std::reverse(path.begin(), path.end());
  std::vector<int> suffix1, suffix2;
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto [mu, nu] = label[path[i]];
    if (mu != kBottom) suffix1.push_back(mu);
    if (nu != kBottom) suffix2.push_back(nu);
  }
  // Walk the common prefix back through the layers, remembering the simulated states.
  int node = origin[path[0]];
  long long k = deep.at(node);
  std::vector<int> common, diag{node % n};
  for (long long t = k; t > 0; --t) {
    int target = node, pred = -1, letter = -1;
    layer_step(layers[layer_index(t - 1)], [&](int from, int gg, int to) {
      if (pred < 0 && to == target) pred = from, letter = gg;
    });
    common.push_back(letter);
    diag.push_back(pred % n);
    node = pred;
  }
  std::reverse(common.begin(), common.end());
  std::reverse(diag.begin(), diag.end());
  Configuration left{node % n, common}, right{node % n, common};
  left.stack.insert(left.stack.end(), suffix1.begin(), suffix1.end());
  right.stack.insert(right.stack.end(), suffix2.begin(), suffix2.end());
  v.left = left;
  v.right = right;
  v.detail = "configurations share " + std::to_string(k) + " top stack letters but are not equivalent";
  if (!opt.separator) return v;

  // The separator pops the common part, follows the divergence path, and ends with a
  // return-free tail (or bottom pops and then such a tail).
  const std::size_t cap = opt.separator_max_length;
  Word sep;
  bool ok = true;
  for (std::size_t i = 0; ok && i < common.size(); ++i) {
    int x = diag[i] * n + diag[i], y = diag[i + 1] * n + diag[i + 1];
    auto piece = pairs.step_word(x, common[i], common[i], y, cap);
    ok = piece && sep.size() + piece->size() <= cap;
    if (ok) sep.insert(sep.end(), piece->begin(), piece->end());
  }
  bool closed = false;
  for (std::size_t i = 1; ok && !closed && i < path.size(); ++i) {
    const Node& from = nodes[path[i - 1]];
    const Node& to = nodes[path[i]];
    std::optional<Word> piece;
    if (to.x == qf) {
      piece = pairs.zx_word(from.x, cap);
      closed = true;
    } else {
      piece = pairs.step_word(from.x, label[path[i]].first, label[path[i]].second, to.x, cap);
    }
    ok = piece && sep.size() + piece->size() <= cap;
    if (ok) sep.insert(sep.end(), piece->begin(), piece->end());
  }
  if (ok && !closed) {
    auto piece = pairs.sep0_word(nodes[found].x, cap);
    ok = piece && sep.size() + piece->size() <= cap;
    if (ok) sep.insert(sep.end(), piece->begin(), piece->end());
  }
  if (!ok) {
    v.detail += "; separator longer than " + std::to_string(cap) + " letters";
    return v;
  }
  auto a1 = dvpa_run(dc, left, sep), a2 = dvpa_run(dc, right, sep);
  if ((a1 && dc.accepting[a1->state]) == (a2 && dc.accepting[a2->state]))
    throw std::logic_error("is_regular: constructed separator does not separate");
  v.separator = std::move(sep);
  return v;
}

PairVerdict is_regular_explicit(const Dvpa& d, WmMethod wm) {
  d.validate();
  if (!d.deterministic()) throw InputError("is_regular: automaton is not deterministic");
  Dvpa dc = complete_dvpa(d);
  PairVerdict v;
  v.states = dc.size();
  v.m = depth_bound(dc);
  if (v.m > std::numeric_limits<int>::max()) throw ResourceError("depth bound too large for the explicit product");
  SyncTransducer all = sync_intersect(sync_intersect(reachable_pairs(dc), deep_equal_checker(dc)),
                                      nonequiv_transducer(dc, wm));
  v.explored = static_cast<std::size_t>(all.nfa.size());
  Verdict e = is_empty(all.nfa);
  if (e.holds) {
    v.detail = "product is empty";
    return v;
  }
  v.holds = false;
  auto pair = pad_decode(all.nfa.alphabet, *e.witness);
  v.left = config_of_word(dc, (*pair)[0]);
  v.right = config_of_word(dc, (*pair)[1]);
  v.detail = "product accepts a pair";
  return v;
}

}  // namespace wordrel
