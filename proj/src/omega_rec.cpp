#include "wordrel/omega_rec.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace wordrel {

BuchiAutomaton build_Ebar_j(const ParityTransducer& r, int j) {
  const int k = r.arity();
  if (j < 1 || j > k) throw InputError("build_Ebar_j: j must lie in 1.." + std::to_string(k));
  ParityTransducer rc = complete_parity(r);
  BuchiAutomaton in = parity_to_nba(rc);
  BuchiAutomaton out = parity_to_nba(parity_complement(rc));
  // (u, w) in R and (v, w) not in R, or the other way round.
  BuchiAutomaton a = compose_j(in, swap_components(out, j), k - j);
  BuchiAutomaton b = compose_j(out, swap_components(in, j), k - j);
  return trim_buchi(nba_union(a, b));
}

Letter tuple_letter(const Symbol& s) {
  if (s.size() == 1) return s[0];
  std::string r = "<";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + s[i];
  return r + ">";
}

SharpTransducer build_A_sharp(const BuchiAutomaton& ebar, int j, std::size_t budget) {
  auto comps = ebar.alphabet.components();
  if (static_cast<int>(comps.size()) != 2 * j) throw InputError("build_A_sharp: alphabet is not a pair of j-tuples");
  std::vector<std::vector<Letter>> left(comps.begin(), comps.begin() + j), right(comps.begin() + j, comps.end());
  if (left != right) throw InputError("build_A_sharp: the two sides use different letters");
  Alphabet tuples = Alphabet::product(left);
  SharpTransducer s;
  s.j = j;
  for (const auto& sy : tuples.symbols()) s.sigma.push_back(tuple_letter(sy));
  while (std::find(s.sigma.begin(), s.sigma.end(), s.hash) != s.sigma.end()) s.hash += "'";
  std::vector<Letter> gamma = s.sigma;
  gamma.push_back(s.hash);
  s.t = SyncTransducer(Tapes{gamma, gamma});
  SyncTransducer& t = s.t;
  const Alphabet& al = t.nfa.alphabet;
  const int ns = tuples.size();

  // Profiles of the letter pairs (a, b).
  std::vector<TransitionProfile> letter(static_cast<std::size_t>(ns) * ns);
  std::vector<int> sym(letter.size());
  for (int a = 0; a < ns; ++a)
    for (int b = 0; b < ns; ++b) {
      Symbol pair = tuples.symbol(a);
      pair.insert(pair.end(), tuples.symbol(b).begin(), tuples.symbol(b).end());
      letter[a * ns + b] = profile_of_letter(ebar, ebar.alphabet.at(pair));
      sym[a * ns + b] = al.at(Symbol{s.sigma[a], s.sigma[b]});
    }
  const int hash_sym = al.at(Symbol{s.hash, s.hash});

  std::map<std::vector<std::uint8_t>, int> pid;
  std::vector<TransitionProfile> prof;
  auto profile_id = [&](const TransitionProfile& p) {
    auto [it, fresh] = pid.emplace(p.m, static_cast<int>(prof.size()));
    if (fresh) prof.push_back(p);
    return it->second;
  };
  // (phase, prefix profile, period profile or -1)
  using Key = std::tuple<int, int, int>;
  std::map<Key, int> ids;
  std::deque<Key> work;
  std::map<int, std::vector<char>> cycles;  // period profile -> states with an F cycle
  auto accepting = [&](int tu, int tv) {
    auto it = cycles.find(tv);
    if (it == cycles.end()) it = cycles.emplace(tv, profile_f_cycle_from(prof[tv])).first;
    for (int q0 : ebar.initial)
      for (int p = 0; p < ebar.size(); ++p)
        if (prof[tu].at(q0, p) && it->second[p]) return false;
    return true;
  };
  auto state = [&](const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    auto [ph, tu, tv] = k;
    std::string name = "t" + std::to_string(tu) + (ph == 0 ? "" : ph == 1 ? "#" : "#t" + std::to_string(tv));
    int q = t.nfa.add_state(ph == 2 && accepting(tu, tv), name);
    check_budget(static_cast<std::size_t>(t.nfa.size()), budget, "A_# states");
    ids.emplace(k, q);
    work.push_back(k);
    return q;
  };
  t.nfa.add_initial(state({0, profile_id(profile_identity(ebar)), -1}));
  while (!work.empty()) {
    Key k = work.front();
    work.pop_front();
    int q = ids.at(k);
    auto [ph, tu, tv] = k;
    if (ph == 0) t.nfa.add_edge(q, hash_sym, state({1, tu, -1}));
    for (int ab = 0; ab < ns * ns; ++ab) {
      Key next;
      if (ph == 0) next = {0, profile_id(profile_product(prof[tu], letter[ab])), -1};
      else if (ph == 1) next = {2, tu, profile_id(letter[ab])};
      else next = {2, tu, profile_id(profile_product(prof[tv], letter[ab]))};
      t.nfa.add_edge(q, sym[ab], state(next));
    }
  }
  s.profiles = static_cast<int>(prof.size());
  return s;
}

Nfa build_representatives(const SharpTransducer& s, std::size_t budget) {
  const Nfa& a = s.t.nfa;
  const Alphabet& al = a.alphabet;
  std::vector<Letter> gamma = s.sigma;
  gamma.push_back(s.hash);
  Alphabet g = Alphabet::atomic(gamma);
  auto rank = [&](const Letter& x) { return x == s.hash ? -1 : g.at(x); };
  // Pairs (w', w) with w' E w and w' strictly smaller; states (q, order so far).
  enum { kEqual, kLess, kGreater };
  Nfa smaller(al);
  for (int q = 0; q < a.size(); ++q)
    for (int c = 0; c < 3; ++c) smaller.add_state(a.accepting[q] && c == kLess);
  for (int q : a.initial) smaller.add_initial(3 * q + kEqual);
  for (int q = 0; q < a.size(); ++q)
    for (const auto& e : a.out[q]) {
      const Symbol& sy = al.symbol(e.sym);
      if (sy[0] == kPad || sy[1] == kPad) continue;
      int rx = rank(sy[0]), ry = rank(sy[1]);
      int first = rx < ry ? kLess : rx > ry ? kGreater : kEqual;
      for (int c = 0; c < 3; ++c) smaller.add_edge(3 * q + c, e.sym, 3 * e.to + (c == kEqual ? first : c));
    }
  Nfa dominated = relabel(trim(smaller), g, [&](int x) { return g.at(al.symbol(x)[1]); });
  // Sigma* # Sigma+
  Nfa shape(g);
  int s0 = shape.add_state(false), s1 = shape.add_state(false), s2 = shape.add_state(true);
  shape.add_initial(s0);
  const int h = g.at(s.hash);
  for (int x = 0; x < g.size(); ++x) {
    if (x == h) continue;
    shape.add_edge(s0, x, s0);
    shape.add_edge(s1, x, s2);
    shape.add_edge(s2, x, s2);
  }
  shape.add_edge(s0, h, s1);
  return trim(intersect(complement_nfa(dominated, budget), shape));
}

std::vector<SharpFactor> decompose_sharp(const Nfa& in, const Letter& hash) {
  Nfa b = trim(in);
  const Alphabet& g = b.alphabet;
  const int h = g.index(hash);
  std::vector<Letter> letters;
  std::vector<int> to_sigma(g.size(), -1);
  for (int x = 0; x < g.size(); ++x)
    if (x != h) {
      to_sigma[x] = static_cast<int>(letters.size());
      letters.push_back(g.symbol(x)[0]);
    }
  Alphabet sigma = Alphabet::atomic(letters);
  // b without its # edges, re-rooted and re-accepted per factor.
  auto restrict = [&](const std::vector<int>& init, const std::vector<char>& acc) {
    Nfa r(sigma);
    for (int q = 0; q < b.size(); ++q) r.add_state(acc[q]);
    for (int q : init) r.add_initial(q);
    for (int q = 0; q < b.size(); ++q)
      for (const auto& e : b.out[q])
        if (e.sym != h) r.add_edge(q, e.sym == kEpsilon ? kEpsilon : to_sigma[e.sym], e.to);
    return trim(r);
  };
  std::vector<SharpFactor> res;
  if (h < 0) return res;
  for (int p = 0; p < b.size(); ++p)
    for (const auto& e : b.out[p]) {
      if (e.sym != h) continue;
      std::vector<char> at_p(b.size(), 0);
      at_p[p] = 1;
      SharpFactor f{p, e.to, restrict(b.initial, at_p), restrict({e.to}, b.accepting)};
      if (is_empty(f.prefix).holds || is_empty(f.period).holds) continue;
      res.push_back(std::move(f));
    }
  return res;
}

IndexVerdict finite_index(const SharpTransducer& s, std::size_t budget) {
  IndexVerdict v;
  Nfa reps = build_representatives(s, budget);
  v.representative_states = reps.size();
  auto factors = decompose_sharp(reps, s.hash);
  v.factors = static_cast<int>(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (bool prefix : {true, false}) {
      const Nfa& f = prefix ? factors[i].prefix : factors[i].period;
      SlenderVerdict sv = is_slender(f);
      if (sv.holds) continue;
      v.holds = false;
      v.factor = static_cast<int>(i);
      v.in_prefix = prefix;
      v.witness = sv.witness;
      v.alphabet = f.alphabet.components().empty() ? std::vector<Letter>{} : f.alphabet.components()[0];
      v.detail = std::string(prefix ? "prefix" : "period") + " factor of entry " + std::to_string(i) +
                 " is not slender";
      return v;
    }
  v.detail = "all " + std::to_string(factors.size()) + " factor pairs are slender";
  return v;
}

OmegaRecVerdict is_omega_recognizable(const ParityTransducer& r, std::size_t budget) {
  OmegaRecVerdict res;
  for (int j = 1; j <= r.arity(); ++j) {
    BuchiAutomaton ebar = build_Ebar_j(r, j);
    SharpTransducer s = build_A_sharp(ebar, j, budget);
    res.ebar_states.push_back(ebar.size());
    res.profiles.push_back(s.profiles);
    res.per_j.push_back(finite_index(s, budget));
    if (!res.per_j.back().holds) {
      res.holds = false;
      res.failing_j = j;
      res.detail = "E_" + std::to_string(j) + " has infinite index: " + res.per_j.back().detail;
      return res;
    }
  }
  res.detail = "every E_j has finite index";
  return res;
}

}  // namespace wordrel
