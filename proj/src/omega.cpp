#include "wordrel/omega.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "wordrel/slender.hpp"

namespace wordrel {

namespace {

int letter_at(const UPWord& w, std::size_t i) {
  if (i < w.u.size()) return w.u[i];
  return w.v[(i - w.u.size()) % w.v.size()];
}

void hash_mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

}  // namespace

bool lasso_accepts(const BuchiAutomaton& a, const UPWord& w) {
  if (w.v.empty()) throw InputError("lasso period must be nonempty");
  const int len = static_cast<int>(w.u.size() + w.v.size());
  const int un = static_cast<int>(w.u.size());
  auto id = [&](int q, int i) { return q * len + i; };
  const int nodes = a.size() * len;
  std::vector<std::vector<int>> g(nodes);
  for (int q = 0; q < a.size(); ++q)
    for (int i = 0; i < len; ++i) {
      int sym = letter_at(w, i);
      int ni = i + 1 < len ? i + 1 : un;
      for (const auto& e : a.out[q])
        if (e.sym == sym) g[id(q, i)].push_back(id(e.to, ni));
    }
  std::vector<int> src;
  for (int q : a.initial) src.push_back(id(q, 0));
  auto reach = reachable_from(g, src);
  int nc = 0;
  auto comp = scc_ids(g, &nc);
  std::vector<int> size(nc, 0);
  for (int x = 0; x < nodes; ++x) ++size[comp[x]];
  for (int x = 0; x < nodes; ++x) {
    if (!reach[x] || !a.accepting[x / len]) continue;
    if (size[comp[x]] > 1) return true;
    for (int y : g[x])
      if (y == x) return true;
  }
  return false;
}

bool same_omega_word(const UPWord& x, const UPWord& y) {
  if (x.v.empty() || y.v.empty()) throw InputError("lasso period must be nonempty");
  std::size_t n = std::max(x.u.size(), y.u.size()) + std::lcm(x.v.size(), y.v.size());
  for (std::size_t i = 0; i < n; ++i)
    if (letter_at(x, i) != letter_at(y, i)) return false;
  return true;
}

std::vector<UPWord> common_lengths(const std::vector<UPWord>& ws) {
  if (ws.empty()) return {};
  std::size_t umax = 0;
  for (const auto& w : ws) {
    if (w.v.empty()) throw InputError("lasso period must be nonempty");
    umax = std::max(umax, w.u.size());
  }
  std::vector<UPWord> out;
  std::size_t l = 1;
  for (const auto& w : ws) {
    std::size_t gap = umax - w.u.size();
    std::size_t reps = gap / w.v.size(), cut = gap % w.v.size();
    UPWord r;
    r.u = w.u;
    for (std::size_t i = 0; i < reps; ++i) r.u.insert(r.u.end(), w.v.begin(), w.v.end());
    r.u.insert(r.u.end(), w.v.begin(), w.v.begin() + cut);
    r.v.assign(w.v.begin() + cut, w.v.end());
    r.v.insert(r.v.end(), w.v.begin(), w.v.begin() + cut);
    l = std::lcm(l, r.v.size());
    out.push_back(std::move(r));
  }
  for (auto& r : out) {
    Word p = r.v;
    r.v.clear();
    for (std::size_t i = 0; i < l / p.size(); ++i) r.v.insert(r.v.end(), p.begin(), p.end());
  }
  return out;
}

std::size_t ProfileHash::operator()(const TransitionProfile& t) const {
  std::size_t h = t.owner;
  for (auto x : t.m) hash_mix(h, x);
  return h;
}

std::size_t fingerprint(const Nfa& a) {
  std::size_t h = static_cast<std::size_t>(a.size());
  hash_mix(h, static_cast<std::size_t>(a.alphabet.size()));
  for (int q : a.initial) hash_mix(h, q);
  for (int q = 0; q < a.size(); ++q) {
    hash_mix(h, a.accepting[q]);
    for (const auto& e : a.out[q]) {
      hash_mix(h, static_cast<std::size_t>(e.sym + 1));
      hash_mix(h, static_cast<std::size_t>(e.to));
    }
  }
  return h;
}

TransitionProfile profile_identity(const BuchiAutomaton& a) {
  TransitionProfile t{fingerprint(a), a.size(), {}};
  t.m.assign(static_cast<std::size_t>(t.n) * t.n, kNone);
  for (int p = 0; p < t.n; ++p) t.m[p * t.n + p] = a.accepting[p] ? kThroughF : kEdge;
  return t;
}

TransitionProfile profile_of_letter(const BuchiAutomaton& a, int sym) {
  TransitionProfile t{fingerprint(a), a.size(), {}};
  t.m.assign(static_cast<std::size_t>(t.n) * t.n, kNone);
  for (int p = 0; p < t.n; ++p)
    for (const auto& e : a.out[p])
      if (e.sym == sym) {
        auto& c = t.m[p * t.n + e.to];
        std::uint8_t v = (a.accepting[p] || a.accepting[e.to]) ? kThroughF : kEdge;
        c = std::max(c, v);
      }
  return t;
}

TransitionProfile profile_product(const TransitionProfile& s, const TransitionProfile& t) {
  if (s.owner != t.owner || s.n != t.n) throw InputError("profile_product: automaton mismatch");
  TransitionProfile r{s.owner, s.n, std::vector<std::uint8_t>(s.m.size(), kNone)};
  const int n = s.n;
  for (int p = 0; p < n; ++p)
    for (int x = 0; x < n; ++x) {
      std::uint8_t a = s.m[p * n + x];
      if (!a) continue;
      for (int q = 0; q < n; ++q) {
        std::uint8_t b = t.m[x * n + q];
        if (!b) continue;
        auto& c = r.m[p * n + q];
        c = std::max<std::uint8_t>(c, std::max(a, b));
      }
    }
  return r;
}

TransitionProfile profile_of_word(const BuchiAutomaton& a, const Word& w) {
  TransitionProfile t = profile_identity(a);
  for (int s : w) t = profile_product(t, profile_of_letter(a, s));
  return t;
}

std::vector<char> profile_f_cycle_from(const TransitionProfile& tv) {
  const int n = tv.n;
  std::vector<std::vector<int>> g(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (tv.at(p, q)) g[p].push_back(q);
  int nc = 0;
  auto comp = scc_ids(g, &nc);
  std::vector<int> good;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (tv.at(p, q) == kThroughF && comp[p] == comp[q]) good.push_back(p);
  return reachable_from(reverse_graph(g), good);
}

bool profile_pair_accepts(const BuchiAutomaton& a, const TransitionProfile& tu,
                          const TransitionProfile& tv) {
  auto from = profile_f_cycle_from(tv);
  for (int q0 : a.initial)
    for (int p = 0; p < tu.n; ++p)
      if (tu.at(q0, p) && from[p]) return true;
  return false;
}

bool up_accepts_profiles(const BuchiAutomaton& a, const UPWord& w) {
  if (w.v.empty()) throw InputError("lasso period must be nonempty");
  return profile_pair_accepts(a, profile_of_word(a, w.u), profile_of_word(a, w.v));
}

int ParityTransducer::add_state(int prio, std::string name) {
  if (prio < 0) throw InputError("negative priority");
  priority.push_back(prio);
  names.push_back(name.empty() ? "q" + std::to_string(size() - 1) : std::move(name));
  delta.resize(static_cast<std::size_t>(size()) * alphabet.size(), -1);
  return size() - 1;
}

void ParityTransducer::set(int p, int sym, int q) {
  if (p < 0 || p >= size() || q < 0 || q >= size()) throw InputError("state out of range");
  if (sym < 0 || sym >= alphabet.size()) throw InputError("symbol out of range");
  auto& c = delta[static_cast<std::size_t>(p) * alphabet.size() + sym];
  if (c >= 0 && c != q) throw InputError("nondeterministic parity transition at " + names[p]);
  c = q;
}

bool ParityTransducer::complete() const {
  return std::none_of(delta.begin(), delta.end(), [](int x) { return x < 0; });
}

int ParityTransducer::find(const std::string& name) const {
  for (int q = 0; q < size(); ++q)
    if (names[q] == name) return q;
  return -1;
}

bool parity_lasso_accepts(const ParityTransducer& p, const UPWord& w) {
  if (w.v.empty()) throw InputError("lasso period must be nonempty");
  int q = p.initial;
  for (int s : w.u) {
    q = p.next(q, s);
    if (q < 0) return false;
  }
  // Iterate the period until the state at period boundaries repeats.
  std::map<int, int> seen;
  std::vector<int> maxima;
  while (!seen.count(q)) {
    seen[q] = static_cast<int>(maxima.size());
    int mx = 0;
    for (int s : w.v) {
      q = p.next(q, s);
      if (q < 0) return false;
      mx = std::max(mx, p.priority[q]);
    }
    maxima.push_back(mx);
  }
  int mx = 0;
  for (std::size_t i = seen[q]; i < maxima.size(); ++i) mx = std::max(mx, maxima[i]);
  return mx % 2 == 0;
}

ParityTransducer complete_parity(const ParityTransducer& p) {
  if (p.complete()) return p;
  ParityTransducer c = p;
  int sink = c.add_state(1, "sink");
  for (int q = 0; q < c.size(); ++q)
    for (int s = 0; s < c.alphabet.size(); ++s)
      if (c.next(q, s) < 0) c.set(q, s, sink);
  return c;
}

ParityTransducer parity_complement(const ParityTransducer& p) {
  if (!p.complete()) throw InputError("parity_complement: automaton is not complete");
  ParityTransducer c = p;
  for (auto& x : c.priority) ++x;
  return c;
}

BuchiAutomaton parity_to_nba(const ParityTransducer& p) {
  std::set<int> evens;
  for (int x : p.priority)
    if (x % 2 == 0) evens.insert(x);
  std::vector<int> ds(evens.begin(), evens.end());
  const int n = p.size();
  BuchiAutomaton b(p.alphabet);
  for (int q = 0; q < n; ++q) b.add_state(false);
  for (int d : ds)
    for (int q = 0; q < n; ++q) b.add_state(p.priority[q] == d);
  auto phase = [&](int q, std::size_t di) { return n * static_cast<int>(di + 1) + q; };
  b.add_initial(p.initial);
  for (std::size_t di = 0; di < ds.size(); ++di)
    if (p.priority[p.initial] <= ds[di]) b.add_initial(phase(p.initial, di));
  for (int q = 0; q < n; ++q)
    for (int s = 0; s < p.alphabet.size(); ++s) {
      int t = p.next(q, s);
      if (t < 0) continue;
      b.add_edge(q, s, t);
      for (std::size_t di = 0; di < ds.size(); ++di) {
        if (p.priority[t] > ds[di]) continue;
        b.add_edge(q, s, phase(t, di));
        if (p.priority[q] <= ds[di]) b.add_edge(phase(q, di), s, phase(t, di));
      }
    }
  return b;
}

BuchiAutomaton nba_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (a.alphabet != b.alphabet) throw InputError("nba_intersect: alphabet mismatch");
  BuchiAutomaton r(a.alphabet);
  std::map<std::tuple<int, int, int>, int> ids;
  std::deque<std::tuple<int, int, int>> work;
  auto intern = [&](int p, int q, int f) {
    auto key = std::make_tuple(p, q, f);
    auto [it, fresh] = ids.emplace(key, r.size());
    if (fresh) {
      r.add_state(f == 0 && a.accepting[p]);
      work.push_back(key);
    }
    return it->second;
  };
  for (int p : a.initial)
    for (int q : b.initial) r.add_initial(intern(p, q, 0));
  while (!work.empty()) {
    auto [p, q, f] = work.front();
    work.pop_front();
    int src = ids[{p, q, f}];
    int nf = f;
    if (f == 0 && a.accepting[p]) nf = 1;
    else if (f == 1 && b.accepting[q]) nf = 0;
    for (const auto& e : a.out[p])
      for (const auto& g : b.out[q])
        if (e.sym == g.sym) r.add_edge(src, e.sym, intern(e.to, g.to, nf));
  }
  return r;
}

BuchiAutomaton nba_union(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (a.alphabet != b.alphabet) throw InputError("nba_union: alphabet mismatch");
  return union_nfa(a, b);
}

BuchiAutomaton compose_j(const BuchiAutomaton& r, const BuchiAutomaton& s, int middle) {
  auto rc = r.alphabet.components(), sc = s.alphabet.components();
  const int rk = static_cast<int>(rc.size()), sk = static_cast<int>(sc.size());
  if (middle < 0 || middle > rk || middle > sk) throw InputError("compose_j: arity error");
  const int x = rk - middle;
  for (int i = 0; i < middle; ++i)
    if (rc[x + i] != sc[i]) throw InputError("compose_j: middle alphabet mismatch");
  std::vector<std::vector<Letter>> oc(rc.begin(), rc.begin() + x);
  oc.insert(oc.end(), sc.begin() + middle, sc.end());
  Alphabet out = Alphabet::product(oc);
  // Pairs of symbols that agree on the middle, labeled by the outer components.
  std::vector<std::vector<std::pair<int, int>>> matches(r.alphabet.size());
  for (int a = 0; a < r.alphabet.size(); ++a)
    for (int b = 0; b < s.alphabet.size(); ++b) {
      const Symbol &sa = r.alphabet.symbol(a), &sb = s.alphabet.symbol(b);
      if (!std::equal(sa.begin() + x, sa.end(), sb.begin())) continue;
      Symbol o(sa.begin(), sa.begin() + x);
      o.insert(o.end(), sb.begin() + middle, sb.end());
      matches[a].push_back({b, out.at(o)});
    }
  BuchiAutomaton res(out);
  std::map<std::tuple<int, int, int>, int> ids;
  std::deque<std::tuple<int, int, int>> work;
  auto intern = [&](int p, int q, int f) {
    auto key = std::make_tuple(p, q, f);
    auto [it, fresh] = ids.emplace(key, res.size());
    if (fresh) {
      res.add_state(f == 0 && r.accepting[p]);
      work.push_back(key);
    }
    return it->second;
  };
  for (int p : r.initial)
    for (int q : s.initial) res.add_initial(intern(p, q, 0));
  while (!work.empty()) {
    auto [p, q, f] = work.front();
    work.pop_front();
    int src = ids[{p, q, f}];
    int nf = f;
    if (f == 0 && r.accepting[p]) nf = 1;
    else if (f == 1 && s.accepting[q]) nf = 0;
    std::set<std::pair<int, int>> edges;
    for (const auto& e : r.out[p])
      for (auto [b, o] : matches[e.sym])
        for (const auto& g : s.out[q])
          if (g.sym == b) edges.insert({o, intern(e.to, g.to, nf)});
    for (auto [o, t] : edges) res.add_edge(src, o, t);
  }
  return res;
}

BuchiAutomaton swap_components(const BuchiAutomaton& a, int j) {
  auto comps = a.alphabet.components();
  const int k = static_cast<int>(comps.size());
  if (j < 0 || j > k) throw InputError("swap_components: arity error");
  std::vector<std::vector<Letter>> nc(comps.begin() + j, comps.end());
  nc.insert(nc.end(), comps.begin(), comps.begin() + j);
  Alphabet out = Alphabet::product(nc);
  return relabel(a, out, [&](int s) {
    const Symbol& sy = a.alphabet.symbol(s);
    Symbol o(sy.begin() + j, sy.end());
    o.insert(o.end(), sy.begin(), sy.begin() + j);
    return out.at(o);
  });
}

BuchiAutomaton trim_buchi(const BuchiAutomaton& a) {
  auto g = successor_graph(a);
  auto fwd = reachable_from(g, a.initial);
  std::vector<char> alive = fwd;
  // Repeatedly drop states with no nonempty path to a live accepting state.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::vector<int>> rg(a.size());
    for (int q = 0; q < a.size(); ++q)
      if (alive[q])
        for (int t : g[q])
          if (alive[t]) rg[t].push_back(q);
    std::vector<int> preds;
    for (int q = 0; q < a.size(); ++q)
      if (alive[q] && a.accepting[q])
        for (int p : rg[q]) preds.push_back(p);
    auto ok = reachable_from(rg, preds);
    for (int q = 0; q < a.size(); ++q)
      if (alive[q] && !ok[q]) alive[q] = 0, changed = true;
  }
  std::vector<int> map(a.size(), -1);
  BuchiAutomaton r(a.alphabet);
  bool named = !a.names.empty();
  for (int q = 0; q < a.size(); ++q)
    if (alive[q]) {
      map[q] = named ? r.add_state(a.accepting[q], a.names[q]) : r.add_state(a.accepting[q]);
    }
  for (int q = 0; q < a.size(); ++q)
    if (map[q] >= 0)
      for (const auto& e : a.out[q])
        if (map[e.to] >= 0) r.add_edge(map[q], e.sym, map[e.to]);
  for (int q : a.initial)
    if (map[q] >= 0) r.add_initial(map[q]);
  return r;
}

bool omega_finite(const BuchiAutomaton& a) { return is_slender(trim_buchi(a)).holds; }

}  // namespace wordrel
