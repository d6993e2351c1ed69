#include <doctest.h>

#include <random>
#include <set>

#include "wordrel/generators.hpp"
#include "wordrel/nfa.hpp"

using namespace wordrel;

namespace {

// a*b over {a,b}
Nfa astar_b() {
  Nfa n(letters_alphabet(2));
  int s = n.add_state(), f = n.add_state(true);
  n.add_initial(s);
  n.add_edge(s, 0, s);
  n.add_edge(s, 1, f);
  return n;
}

// ab* over {a,b}
Nfa a_bstar() {
  Nfa n(letters_alphabet(2));
  int s = n.add_state(), f = n.add_state(true);
  n.add_initial(s);
  n.add_edge(s, 0, f);
  n.add_edge(f, 1, f);
  return n;
}

bool in_astar_b(const Word& w) {
  if (w.empty() || w.back() != 1) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("determinize") {
  SUBCASE("sigma star a tracks last letter") {
    Nfa n(letters_alphabet(2));
    int s = n.add_state(), f = n.add_state(true);
    n.add_initial(s);
    n.add_edge(s, 0, s);
    n.add_edge(s, 1, s);
    n.add_edge(s, 0, f);
    Dfa d = determinize(n);
    CHECK(d.num_states == 2);
    for_each_word_upto(2, 6, [&](const Word& w) {
      bool expect = !w.empty() && w.back() == 0;
      CHECK(accepts(d, w) == expect);
    });
  }
  SUBCASE("empty language") {
    Nfa n(letters_alphabet(2));
    n.add_initial(n.add_state());
    Dfa d = determinize(n);
    for (char x : d.accepting) CHECK_FALSE(x);
  }
  SUBCASE("budget") {
    Nfa n = random_nfa(7, {8, 2, 0.5, 0, 0.3, 1});
    CHECK_THROWS_AS(determinize(n, 1), ResourceError);
  }
  SUBCASE("random agreement") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Nfa n = random_nfa(seed, {4, 2, 0.3, 0, 0.3, 2});
      Dfa d = determinize(n);
      for_each_word_upto(2, 8, [&](const Word& w) { CHECK(accepts(n, w) == accepts(d, w)); });
    }
  }
}

TEST_CASE("complement") {
  Dfa d = determinize(astar_b());
  Dfa c = complement(d);
  for_each_word_upto(2, 4, [&](const Word& w) { CHECK(accepts(c, w) == !in_astar_b(w)); });
  CHECK_FALSE(accepts(c, {0, 1}));
  CHECK(accepts(c, {1, 0}));
  Dfa cc = complement(c);
  for_each_word_upto(2, 6, [&](const Word& w) { CHECK(accepts(cc, w) == accepts(d, w)); });
  SUBCASE("all accepting") {
    Nfa all(letters_alphabet(2));
    int s = all.add_state(true);
    all.add_initial(s);
    all.add_edge(s, 0, s);
    all.add_edge(s, 1, s);
    CHECK(is_empty(complement(determinize(all)).to_nfa()).holds);
  }
}

TEST_CASE("intersect") {
  Nfa r = intersect(astar_b(), a_bstar());
  int count = 0;
  for_each_word_upto(2, 4, [&](const Word& w) {
    if (accepts(r, w)) {
      ++count;
      CHECK(w == Word{0, 1});
    }
  });
  CHECK(count == 1);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Nfa n = random_nfa(seed, {4, 2, 0.35, 0, 0.4, 1});
    CHECK(is_empty(intersect(n, complement_nfa(n))).holds);
  }
  Nfa other(letters_alphabet(3));
  CHECK_THROWS_AS(intersect(astar_b(), other), InputError);
}

TEST_CASE("project") {
  Alphabet pairs = Alphabet::product({{"a", "b"}, {"x", "y"}});
  Nfa n(pairs);
  int s = n.add_state(true);
  n.add_initial(s);
  n.add_edge(s, pairs.at(Symbol{"a", "x"}), s);
  n.add_edge(s, pairs.at(Symbol{"b", "y"}), s);
  Nfa p = project(n, {0});
  CHECK(p.alphabet.size() == 2);
  CHECK(accepts(p, make_word(p.alphabet, {"a", "b", "b"})));
  Nfa same = project(n, {0, 1});
  CHECK(same.alphabet == n.alphabet);
  CHECK_THROWS_AS(project(n, {2}), InputError);

  // Projection of a random pair relation equals the existential image.
  std::mt19937_64 rng(3);
  Nfa r(pairs);
  for (int q = 0; q < 3; ++q) r.add_state(rng() % 2);
  r.add_initial(0);
  for (int q = 0; q < 3; ++q)
    for (int x = 0; x < pairs.size(); ++x)
      for (int t = 0; t < 3; ++t)
        if (rng() % 3 == 0) r.add_edge(q, x, t);
  Nfa pr = project(r, {1});
  for_each_word_upto(pr.alphabet.size(), 4, [&](const Word& v) {
    bool exists = false;
    for_each_word(2, static_cast<int>(v.size()), [&](const Word& u) {
      Word w;
      for (std::size_t i = 0; i < v.size(); ++i)
        w.push_back(pairs.at(Symbol{u[i] ? "b" : "a", pr.alphabet.symbol(v[i])[0]}));
      exists = exists || accepts(r, w);
    });
    CHECK(accepts(pr, v) == exists);
  });
}

TEST_CASE("is_empty") {
  SUBCASE("unreachable accepting state") {
    Nfa n(letters_alphabet(2));
    n.add_initial(n.add_state());
    n.add_state(true);
    CHECK(is_empty(n).holds);
  }
  SUBCASE("shortest witness") {
    Verdict v = is_empty(astar_b());
    CHECK_FALSE(v.holds);
    CHECK(*v.witness == Word{1});
  }
  SUBCASE("agrees with enumeration") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Nfa n = random_nfa(seed, {5, 2, 0.15, 0.05, 0.2, 1});
      Verdict v = is_empty(n);
      std::optional<Word> first;
      for (int len = 0; len <= 10 && !first; ++len)
        for_each_word(2, len, [&](const Word& w) {
          if (!first && accepts(n, w)) first = w;
        });
      CHECK(v.holds == !first.has_value());
      if (first) {
        CHECK(accepts(n, *v.witness));
        CHECK(v.witness->size() == first->size());
      }
    }
  }
}

TEST_CASE("eliminate_epsilon") {
  Nfa a = astar_b();
  Nfa b = eliminate_epsilon(a);
  CHECK(b.num_edges() == a.num_edges());
  Nfa chain(letters_alphabet(2));
  int x = chain.add_state(), y = chain.add_state(), z = chain.add_state(true);
  chain.add_initial(x);
  chain.add_edge(x, kEpsilon, y);
  chain.add_edge(y, 0, z);
  Nfa e = eliminate_epsilon(chain);
  CHECK_FALSE(e.has_epsilon());
  CHECK(accepts(e, {0}));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Nfa n = random_nfa(seed, {4, 2, 0.25, 0.2, 0.3, 1});
    Nfa m = eliminate_epsilon(n);
    CHECK_FALSE(m.has_epsilon());
    for_each_word_upto(2, 6, [&](const Word& w) { CHECK(accepts(n, w) == accepts(m, w)); });
  }
}

TEST_CASE("accepts") {
  Nfa n(letters_alphabet(2));
  n.add_initial(n.add_state(true));
  CHECK(accepts(n, {}));
  CHECK(accepts(astar_b(), {0, 1}));
  CHECK_FALSE(accepts(astar_b(), {1, 0}));
  CHECK_THROWS_AS(accepts(astar_b(), {5}), InputError);
  std::mt19937_64 rng(11);
  Nfa r = random_nfa(5, {5, 2, 0.3, 0.1, 0.3, 2});
  Dfa d = determinize(r);
  for (int i = 0; i < 100; ++i) {
    Word w(rng() % 9);
    for (auto& x : w) x = static_cast<int>(rng() % 2);
    CHECK(accepts(r, w) == accepts(d, w));
  }
}

TEST_CASE("finite language") {
  CHECK_FALSE(is_finite_language(astar_b()));
  Nfa n(letters_alphabet(2));
  int s = n.add_state(), f = n.add_state(true), dead = n.add_state();
  n.add_initial(s);
  n.add_edge(s, 0, f);
  n.add_edge(f, 1, dead);
  n.add_edge(dead, 1, dead);
  CHECK(is_finite_language(n));
}

TEST_CASE("minimize") {
  Dfa d = determinize(astar_b());
  Dfa m = minimize(d);
  CHECK(m.num_states <= d.num_states);
  CHECK(m.num_states == 3);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Nfa n = random_nfa(seed, {5, 2, 0.3, 0, 0.3, 2});
    Dfa a = determinize(n);
    Dfa b = minimize(a);
    CHECK(b.num_states <= a.num_states);
    CHECK(minimize(b).num_states == b.num_states);
    for_each_word_upto(2, 7, [&](const Word& w) { CHECK(accepts(a, w) == accepts(b, w)); });
  }
}
