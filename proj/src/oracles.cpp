#include "wordrel/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

namespace wordrel {

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

// reach[l][p][q]: a path of exactly l letters from p to q, l = 0..maxlen.
std::vector<BoolMatrix> exact_reach(const Nfa& a, int maxlen) {
  const int n = a.size();
  std::vector<BoolMatrix> r(maxlen + 1, BoolMatrix(n, std::vector<char>(n, 0)));
  for (int p = 0; p < n; ++p) r[0][p][p] = 1;
  for (int l = 1; l <= maxlen; ++l)
    for (int p = 0; p < n; ++p)
      for (int x = 0; x < n; ++x)
        if (r[l - 1][p][x])
          for (const auto& e : a.out[x]) r[l][p][e.to] = 1;
  return r;
}

bool structural_signal(const Nfa& a) {
  const int n = a.size();
  if (n == 0) return true;
  // Simple paths suffice for access words, loops and tails.
  auto reach = exact_reach(a, n);
  std::vector<char> from_init(n, 0), loop(n, 0), to_f(n, 0);
  for (int l = 0; l <= n; ++l)
    for (int s : a.initial)
      for (int q = 0; q < n; ++q)
        if (reach[l][s][q]) from_init[q] = 1;
  for (int q = 0; q < n; ++q)
    for (int l = 1; l <= n; ++l)
      if (reach[l][q][q]) loop[q] = 1;
  for (int p = 0; p < n; ++p)
    for (int l = 0; l < n; ++l)
      for (int f = 0; f < n; ++f)
        if (a.accepting[f] && reach[l][p][f]) to_f[p] = 1;
  std::vector<char> pump(n, 0);
  for (int p = 0; p < n; ++p) pump[p] = loop[p] && to_f[p];
  // x can continue (in at most n letters) to a pumpable state
  std::vector<char> feeds(n, 0);
  for (int x = 0; x < n; ++x)
    for (int l = 0; l < n; ++l)
      for (int p = 0; p < n; ++p)
        if (pump[p] && reach[l][x][p]) feeds[x] = 1;

  // Lockstep layers of (x, y, differed) of exact length.  The product graph has 2n^2
  // nodes, so every reachable node shows up within that many layers.
  const int cap = 2 * n * n;
  for (int q = 0; q < n; ++q) {
    if (!from_init[q] || !loop[q]) continue;
    std::set<std::tuple<int, int, int>> layer{{q, q, 0}}, seen = layer;
    for (int l = 1; l <= cap && !layer.empty(); ++l) {
      std::set<std::tuple<int, int, int>> next;
      for (auto [x, y, d] : layer)
        for (const auto& ex : a.out[x])
          for (const auto& ey : a.out[y]) {
            std::tuple<int, int, int> t{ex.to, ey.to, d || ex.sym != ey.sym};
            if (seen.insert(t).second) next.insert(t);
          }
      for (auto [x, y, d] : next)
        if (d && feeds[x] && feeds[y]) return false;
      layer = std::move(next);
    }
  }
  return true;
}

}  // namespace

bool counting_slender(const Nfa& a) {
  Dfa d = determinize(eliminate_epsilon(a));
  // Keep states that can still reach acceptance; counts per state bound the accepted
  // counts a fixed number of letters later.
  std::vector<std::vector<int>> g(d.num_states);
  for (int q = 0; q < d.num_states; ++q)
    for (int s = 0; s < d.alphabet.size(); ++s) g[q].push_back(d.next(q, s));
  std::vector<int> acc;
  for (int q = 0; q < d.num_states; ++q)
    if (d.accepting[q]) acc.push_back(q);
  auto live = reachable_from(reverse_graph(g), acc);
  if (!live[d.initial]) return true;

  using Count = std::uint64_t;
  const Count sat = Count{1} << 62;
  std::vector<Count> x(d.num_states, 0);
  x[d.initial] = 1;
  std::set<std::vector<Count>> seen;
  // A bounded integer sequence generated by a fixed linear map repeats; an unbounded one
  // never does.  The cap only guards against pathological periods.
  const std::size_t n = static_cast<std::size_t>(d.num_states);
  const std::size_t cap = std::max<std::size_t>(2 * n * n, 50000);
  for (std::size_t l = 0; l < cap; ++l) {
    if (!seen.insert(x).second) return true;
    std::vector<Count> y(d.num_states, 0);
    for (int q = 0; q < d.num_states; ++q) {
      if (!x[q]) continue;
      for (int t : g[q])
        if (live[t]) y[t] = std::min(sat, y[t] + x[q]);
    }
    for (Count c : y)
      if (c >= sat) return false;
    x = std::move(y);
  }
  return false;
}

bool brute_slender(const Nfa& a) {
  bool s1 = structural_signal(eliminate_epsilon(a));
  bool s2 = counting_slender(a);
  if (s1 != s2)
    throw DiscrepancyError(std::string("brute_slender: structural says ") +
                           (s1 ? "slender" : "not slender") + ", counting says " +
                           (s2 ? "slender" : "not slender"));
  return s1;
}

namespace {

// Lifts a binary relation automaton onto two of three tapes.  Moves that are pad on
// both lifted tapes leave the state unchanged.
Nfa lift3(const Nfa& r, const Alphabet& three, int i, int j) {
  Nfa l(three);
  for (int q = 0; q < r.size(); ++q) l.add_state(r.accepting[q]);
  l.initial = r.initial;
  for (int s = 0; s < three.size(); ++s) {
    const Symbol& x = three.symbol(s);
    if (x[i] == kPad && x[j] == kPad) {
      for (int q = 0; q < r.size(); ++q) l.add_edge(q, s, q);
      continue;
    }
    int rs = r.alphabet.index(Symbol{x[i], x[j]});
    for (int q = 0; q < r.size(); ++q)
      for (const auto& e : r.out[q])
        if (e.sym == rs) l.add_edge(q, s, e.to);
  }
  return l;
}

Nfa ebar_half(const Nfa& r, const Nfa& rbar, const Tapes& three_tapes, const Alphabet& pair) {
  Alphabet three = padded_alphabet(three_tapes);
  Nfa prod = intersect(intersect(lift3(r, three, 0, 2), lift3(rbar, three, 1, 2)),
                       well_padded(three_tapes));
  Nfa p = relabel(trim(prod), pair, [&](int s) {
    const Symbol& x = three.symbol(s);
    if (x[0] == kPad && x[1] == kPad) return kEpsilon;
    return pair.at(Symbol{x[0], x[1]});
  });
  return trim(eliminate_epsilon(p));
}

// Length-lexicographic u' < u over padded pairs (u', u).
Nfa llex_less(const Tapes& tapes) {
  Alphabet al = padded_alphabet(tapes);
  const auto& sig = tapes[0];
  auto rank = [&](const Letter& l) { return std::find(sig.begin(), sig.end(), l) - sig.begin(); };
  Nfa c(al);
  enum { kEq, kLess, kGreater, kShorter, kLonger };
  c.add_state(false, "eq");
  c.add_state(true, "less");
  c.add_state(false, "greater");
  c.add_state(true, "shorter");
  c.add_state(false, "longer");
  c.add_initial(kEq);
  for (int s = 0; s < al.size(); ++s) {
    const Symbol& x = al.symbol(s);
    if (x[0] == kPad) {
      for (int q : {kEq, kLess, kGreater, kShorter}) c.add_edge(q, s, kShorter);
    } else if (x[1] == kPad) {
      for (int q : {kEq, kLess, kGreater, kLonger}) c.add_edge(q, s, kLonger);
    } else {
      auto a = rank(x[0]), b = rank(x[1]);
      c.add_edge(kEq, s, a < b ? kLess : a > b ? kGreater : kEq);
      c.add_edge(kLess, s, kLess);
      c.add_edge(kGreater, s, kGreater);
    }
  }
  return c;
}

}  // namespace

bool ccg06_recognizable(const SyncTransducer& t, std::size_t budget) {
  if (t.arity() != 2) throw InputError("ccg06_recognizable: binary relations only");
  const auto& s1 = t.tapes[0];
  const auto& s2 = t.tapes[1];
  Nfa r = trim(sync_as_nfa(t));
  Nfa rbar = sync_complement(t, budget).nfa;
  Tapes three{s1, s1, s2};
  Tapes two{s1, s1};
  Alphabet pair = padded_alphabet(two);
  Nfa ebar = union_nfa(ebar_half(r, rbar, three, pair), ebar_half(rbar, r, three, pair));
  Nfa e1 = trim(intersect(complement_nfa(ebar, budget), well_padded(two)));
  Nfa smaller = trim(intersect(e1, llex_less(two)));
  // words u that have a strictly smaller equivalent u'
  Alphabet single = Alphabet::atomic(s1);
  Nfa dominated = relabel(smaller, single, [&](int s) {
    const Symbol& x = pair.symbol(s);
    return x[1] == kPad ? kEpsilon : single.at(Symbol{x[1]});
  });
  Nfa reps = complement_nfa(eliminate_epsilon(dominated), budget);
  return is_finite_language(reps);
}

std::optional<Word> bounded_separator(const Dvpa& d, const Configuration& c1,
                                      const Configuration& c2, int maxlen,
                                      std::size_t budget) {
  VpaIndex idx(d);
  using Side = std::optional<Configuration>;
  auto acc = [&](const Side& c) { return c && d.accepting[c->state]; };
  const int k = d.num_letters();
  std::set<std::pair<Side, Side>> seen;
  std::deque<std::pair<std::pair<Side, Side>, Word>> work;
  work.push_back({{c1, c2}, {}});
  seen.insert({c1, c2});
  while (!work.empty()) {
    auto [pr, w] = std::move(work.front());
    work.pop_front();
    if (acc(pr.first) != acc(pr.second)) return w;
    if (static_cast<int>(w.size()) >= maxlen) continue;
    for (int a = 0; a < k; ++a) {
      Side x = pr.first ? idx.step(*pr.first, a) : std::nullopt;
      Side y = pr.second ? idx.step(*pr.second, a) : std::nullopt;
      if (!x && !y) continue;
      if (!seen.insert({x, y}).second) continue;
      if (seen.size() > budget) return std::nullopt;
      Word nw = w;
      nw.push_back(a);
      work.push_back({{std::move(x), std::move(y)}, std::move(nw)});
    }
  }
  return std::nullopt;
}

SyncTransducer generate_Rn(int n) {
  if (n < 1) throw InputError("generate_Rn: n must be positive");
  SyncTransducer t(Tapes{{"0", "1", "#"}, {"0", "1"}});
  const Alphabet& al = t.nfa.alphabet;
  // (phase, count, marked position or -1, remembered bit); after the marked position has
  // been checked in phase 2 it is stored as -2.
  using Key = std::tuple<int, int, int, int>;
  std::map<Key, int> id;
  std::deque<Key> work;
  auto state = [&](const Key& k) {
    auto it = id.find(k);
    if (it != id.end()) return it->second;
    auto [ph, i, m, b] = k;
    std::string name = (ph == 0 ? "u" : "v") + std::to_string(i) + "_" +
                       (m == -1 ? std::string("n") : m == -2 ? std::string("ok")
                                                              : std::to_string(m) + "b" + std::to_string(b));
    int q = t.nfa.add_state(ph == 1 && i == n, name);
    id.emplace(k, q);
    work.push_back(k);
    return q;
  };
  t.nfa.add_initial(state({0, 0, -1, 0}));
  while (!work.empty()) {
    Key k = work.front();
    work.pop_front();
    int q = id.at(k);
    auto [ph, i, m, b] = k;
    if (ph == 0 && i < n) {
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          if (y == 1 && m != -1) continue;  // second 1 in t
          Key nk = y == 1 ? Key{0, i + 1, i, x} : Key{0, i + 1, m, m == -1 ? 0 : b};
          t.nfa.add_edge(q, al.at(Symbol{std::to_string(x), std::to_string(y)}), state(nk));
        }
    } else if (ph == 0) {
      t.nfa.add_edge(q, al.at(Symbol{"#", kPad}), state({1, 0, m, m == -1 ? 0 : b}));
    } else if (i < n) {
      for (int x = 0; x < 2; ++x) {
        if (i == m && x != b) continue;
        int nm = i == m ? -2 : m;
        t.nfa.add_edge(q, al.at(Symbol{std::to_string(x), kPad}),
                       state({1, i + 1, nm, nm >= 0 ? b : 0}));
      }
    }
  }
  return t;
}

bool in_Rn(int n, const std::vector<Letter>& left, const std::vector<Letter>& right) {
  const std::size_t un = static_cast<std::size_t>(n);
  if (left.size() != 2 * un + 1 || right.size() != un || left[un] != "#") return false;
  int ones = 0;
  for (std::size_t i = 0; i < un; ++i) {
    if (left[i] == "#" || left[un + 1 + i] == "#") return false;
    if (right[i] == "1") {
      ++ones;
      if (left[i] != left[un + 1 + i]) return false;
    }
  }
  return ones <= 1;
}

}  // namespace wordrel
