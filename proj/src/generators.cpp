#include "wordrel/generators.hpp"

#include <random>

namespace wordrel {

Alphabet letters_alphabet(int k) {
  std::vector<Letter> ls;
  for (int i = 0; i < k; ++i) ls.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet::atomic(ls);
}

Nfa random_nfa(std::uint64_t seed, const NfaShape& shape) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Nfa a(letters_alphabet(shape.letters));
  for (int q = 0; q < shape.states; ++q) a.add_state(u(rng) < shape.accepting);
  for (int i = 0; i < shape.initial; ++i)
    a.add_initial(static_cast<int>(rng() % static_cast<std::uint64_t>(shape.states)));
  for (int p = 0; p < shape.states; ++p)
    for (int s = 0; s < shape.letters; ++s)
      for (int q = 0; q < shape.states; ++q)
        if (u(rng) < shape.density) a.add_edge(p, s, q);
  if (shape.eps > 0)
    for (int p = 0; p < shape.states; ++p)
      for (int q = 0; q < shape.states; ++q)
        if (p != q && u(rng) < shape.eps) a.add_edge(p, kEpsilon, q);
  return a;
}

SyncTransducer random_sync(std::uint64_t seed, int states, double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SyncTransducer t(Tapes{{"a", "b"}, {"a", "b"}});
  // mode 0: both tapes live, 1: second tape padded, 2: first tape padded
  std::vector<int> mode(states, 0);
  for (int q = 1; q < states; ++q) mode[q] = static_cast<int>(rng() % 3);
  for (int q = 0; q < states; ++q) t.nfa.add_state(u(rng) < 0.45);
  t.nfa.add_initial(0);
  const Alphabet& al = t.nfa.alphabet;
  for (int p = 0; p < states; ++p)
    for (int s = 0; s < al.size(); ++s) {
      const Symbol& sy = al.symbol(s);
      int target_mode = sy[1] == kPad ? 1 : sy[0] == kPad ? 2 : 0;
      if (mode[p] != 0 && target_mode != mode[p]) continue;
      for (int q = 0; q < states; ++q)
        if (mode[q] == target_mode && u(rng) < density) t.nfa.add_edge(p, s, q);
    }
  return t;
}

Dvpa random_dvpa(std::uint64_t seed, int states, int stack_letters, double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  Dvpa d;
  d.calls = {"c", "d"};
  d.returns = {"r", "s"};
  d.internals = {"i"};
  for (int g = 0; g < stack_letters; ++g) d.stack.push_back("g" + std::to_string(g));
  for (int q = 0; q < states; ++q) d.add_state(u(rng) < 0.4);
  d.initial = 0;
  for (int p = 0; p < states; ++p) {
    for (int c = 0; c < 2; ++c)
      if (u(rng) < density) d.add_push(p, c, pick(states), pick(stack_letters));
    for (int r = 0; r < 2; ++r)
      for (int g = kBottom; g < stack_letters; ++g)
        if (u(rng) < density) d.add_pop(p, r, g, pick(states));
    if (u(rng) < density) d.add_int(p, 0, pick(states));
  }
  return d;
}

ParityTransducer random_parity(std::uint64_t seed, int states, int max_priority) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  ParityTransducer p(Alphabet::product({{"a", "b"}, {"a", "b"}}));
  for (int q = 0; q < states; ++q) p.add_state(pick(max_priority + 1));
  for (int q = 0; q < states; ++q)
    for (int s = 0; s < p.alphabet.size(); ++s) p.set(q, s, pick(states));
  return p;
}

UPWord random_lasso(std::uint64_t seed, int letters, int max_prefix, int max_period) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  UPWord w;
  int lu = pick(max_prefix + 1), lv = 1 + pick(max_period);
  for (int i = 0; i < lu; ++i) w.u.push_back(pick(letters));
  for (int i = 0; i < lv; ++i) w.v.push_back(pick(letters));
  return w;
}

}  // namespace wordrel
