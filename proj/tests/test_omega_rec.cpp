#include <doctest.h>

#include <random>
#include <set>

#include "wordrel/fixtures.hpp"
#include "wordrel/generators.hpp"
#include "wordrel/omega_rec.hpp"

using namespace wordrel;

namespace {

const std::vector<Letter> kAb{"a", "b"};

std::vector<Letter> spell(const Word& w) {
  std::vector<Letter> r;
  for (int x : w) r.push_back(kAb[x]);
  return r;
}

// Lasso over the pair alphabet of a j = 1 complement automaton.
UPWord zip(const BuchiAutomaton& ebar, const Word& u, const Word& x, const Word& v, const Word& y) {
  UPWord w;
  for (std::size_t i = 0; i < u.size(); ++i) w.u.push_back(ebar.alphabet.at(Symbol{kAb[u[i]], kAb[x[i]]}));
  for (std::size_t i = 0; i < v.size(); ++i) w.v.push_back(ebar.alphabet.at(Symbol{kAb[v[i]], kAb[y[i]]}));
  return w;
}

std::vector<Letter> sharp(const SharpTransducer& s, const Word& u, const Word& v) {
  std::vector<Letter> w = spell(u);
  w.push_back(s.hash);
  for (const auto& x : spell(v)) w.push_back(x);
  return w;
}

bool in_sharp(const SharpTransducer& s, const Word& u, const Word& v, const Word& x, const Word& y) {
  return sync_accepts(s.t, {sharp(s, u, v), sharp(s, x, y)});
}

// Every (u, v) with |u| = n, |v| = m over {a,b}.
template <class F>
void slice(int n, int m, F&& f) {
  for_each_word(2, n, [&](const Word& u) { for_each_word(2, m, [&](const Word& v) { f(u, v); }); });
}

int representatives_in_slice(const Nfa& reps, const SharpTransducer& s, int n, int m) {
  int count = 0;
  slice(n, m, [&](const Word& u, const Word& v) {
    count += accepts(reps, make_word(reps.alphabet, sharp(s, u, v)));
  });
  return count;
}

UPWord of(const Word& u, const Word& v) { return {u, v}; }

}  // namespace

TEST_CASE("complement of E_j") {
  SUBCASE("full relation has one class") {
    BuchiAutomaton e = build_Ebar_j(fixtures::full_omega(), 1);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      UPWord w = random_lasso(seed, e.alphabet.size(), 3, 3);
      CHECK_FALSE(lasso_accepts(e, w));
    }
  }
  SUBCASE("equality separates distinct words") {
    BuchiAutomaton e = build_Ebar_j(fixtures::eq_omega(), 1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
      auto rw = [&](int len) {
        Word w(len);
        for (auto& x : w) x = static_cast<int>(rng() % 2);
        return w;
      };
      int n = static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 3);
      Word u = rw(n), x = rw(n), v = rw(m), y = rw(m);
      bool differ = !same_omega_word(of(u, v), of(x, y));
      CHECK(lasso_accepts(e, zip(e, u, x, v, y)) == differ);
    }
  }
  SUBCASE("j = k compares membership") {
    ParityTransducer head = fixtures::head_omega();
    BuchiAutomaton e = build_Ebar_j(head, 2);
    CHECK(e.alphabet.arity() == 4);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      UPWord w = random_lasso(seed, e.alphabet.size(), 2, 3);
      UPWord left, right;
      for (const Word* part : {&w.u, &w.v})
        for (int s : *part) {
          const Symbol& sy = e.alphabet.symbol(s);
          (part == &w.u ? left.u : left.v).push_back(head.alphabet.at(Symbol{sy[0], sy[1]}));
          (part == &w.u ? right.u : right.v).push_back(head.alphabet.at(Symbol{sy[2], sy[3]}));
        }
      bool expect = parity_lasso_accepts(head, left) != parity_lasso_accepts(head, right);
      CHECK(lasso_accepts(e, w) == expect);
    }
  }
  SUBCASE("range of j") {
    CHECK_THROWS_AS(build_Ebar_j(fixtures::eq_omega(), 0), InputError);
    CHECK_THROWS_AS(build_Ebar_j(fixtures::eq_omega(), 3), InputError);
  }
}

TEST_CASE("sharp transducer") {
  BuchiAutomaton e = build_Ebar_j(fixtures::eq_omega(), 1);
  SharpTransducer s = build_A_sharp(e, 1);
  CHECK(s.hash == "#");
  CHECK(in_sharp(s, {0}, {1}, {0}, {1}));
  CHECK_FALSE(in_sharp(s, {0}, {0, 1}, {0}, {1, 0}));
  CHECK_FALSE(sync_accepts(s.t, {{"a", "#", "b", "a"}, {"a", "b", "#", "a", "b"}}));
  CHECK(in_sharp(s, {0}, {0, 1}, {0, 1}, {1, 0}) == false);
  CHECK(in_sharp(s, {0, 1}, {0, 1}, {0, 1}, {0, 1}));
  CHECK(in_sharp(s, {}, {0, 0}, {}, {0}) == false);  // periods of different length
  CHECK(in_sharp(s, {1}, {0, 0}, {1}, {0, 0}));
  CHECK_FALSE(sync_accepts(s.t, {{"a", "#"}, {"a", "#"}}));
  CHECK(padding_violation(s.t) == std::nullopt);

  SUBCASE("agrees with the profile check on all small slices") {
    for (int n = 0; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        slice(n, m, [&](const Word& u, const Word& v) {
          slice(n, m, [&](const Word& x, const Word& y) {
            bool expect = !up_accepts_profiles(e, zip(e, u, x, v, y));
            CHECK(in_sharp(s, u, v, x, y) == expect);
          });
        });
  }
  SUBCASE("equivalence laws") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
      int n = static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 2);
      std::vector<std::pair<Word, Word>> ws;
      for (int k = 0; k < 3; ++k) {
        Word u(n), v(m);
        for (auto& x : u) x = static_cast<int>(rng() % 2);
        for (auto& x : v) x = static_cast<int>(rng() % 2);
        ws.push_back({u, v});
      }
      auto rel = [&](int a, int b) { return in_sharp(s, ws[a].first, ws[a].second, ws[b].first, ws[b].second); };
      CHECK(rel(0, 0));
      CHECK(rel(0, 1) == rel(1, 0));
      if (rel(0, 1) && rel(1, 2)) CHECK(rel(0, 2));
    }
  }
  SUBCASE("pair alphabets must match") {
    BuchiAutomaton odd(Alphabet::product({{"a", "b"}, {"c"}}));
    CHECK_THROWS_AS(build_A_sharp(odd, 1), InputError);
  }
}

TEST_CASE("representatives") {
  SUBCASE("full relation") {
    SharpTransducer s = build_A_sharp(build_Ebar_j(fixtures::full_omega(), 1), 1);
    Nfa reps = build_representatives(s);
    for (int n = 0; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        CHECK(representatives_in_slice(reps, s, n, m) == 1);
        CHECK(accepts(reps, make_word(reps.alphabet, sharp(s, Word(n, 0), Word(m, 0)))));
      }
    for_each_word_upto(2, 5, [&](const Word& w) { CHECK_FALSE(accepts(reps, w)); });
  }
  SUBCASE("equality") {
    SharpTransducer s = build_A_sharp(build_Ebar_j(fixtures::eq_omega(), 1), 1);
    Nfa reps = build_representatives(s);
    for (int n = 0; n <= 2; ++n)
      for (int m = 1; m <= 3; ++m) {
        std::vector<UPWord> distinct;
        slice(n, m, [&](const Word& u, const Word& v) {
          bool fresh = true;
          for (const auto& d : distinct) fresh = fresh && !same_omega_word(d, of(u, v));
          if (fresh) distinct.push_back(of(u, v));
        });
        CHECK(representatives_in_slice(reps, s, n, m) == static_cast<int>(distinct.size()));
      }
    CHECK(representatives_in_slice(reps, s, 1, 1) == 4);
  }
  SUBCASE("same first letter") {
    SharpTransducer s = build_A_sharp(build_Ebar_j(fixtures::head_omega(), 1), 1);
    Nfa reps = build_representatives(s);
    for (int n = 0; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) CHECK(representatives_in_slice(reps, s, n, m) == 2);
  }
}

TEST_CASE("sharp decomposition") {
  for (const auto& r : {fixtures::eq_omega(), fixtures::head_omega(), fixtures::full_omega()}) {
    SharpTransducer s = build_A_sharp(build_Ebar_j(r, 1), 1);
    Nfa reps = build_representatives(s);
    auto parts = decompose_sharp(reps, s.hash);
    CHECK_FALSE(parts.empty());
    const int h = reps.alphabet.at(s.hash);
    for_each_word_upto(reps.alphabet.size(), 7, [&](const Word& w) {
      bool in_union = false;
      auto at = std::find(w.begin(), w.end(), h);
      if (at != w.end() && std::find(at + 1, w.end(), h) == w.end())
        for (const auto& f : parts) {
          auto project = [&](Word::const_iterator b, Word::const_iterator e) {
            Word r;
            for (; b != e; ++b) r.push_back(f.prefix.alphabet.at(reps.alphabet.symbol(*b)));
            return r;
          };
          in_union = in_union || (accepts(f.prefix, project(w.begin(), at)) &&
                                  accepts(f.period, project(at + 1, w.end())));
        }
      CHECK(in_union == accepts(reps, w));
    });
  }
  SUBCASE("single edge and pruning") {
    Nfa b(Alphabet::atomic({"a", "#"}));
    int p = b.add_state(), q = b.add_state(true), dead = b.add_state();
    b.add_initial(p);
    b.add_edge(p, 1, q);
    b.add_edge(q, 0, q);
    b.add_edge(p, 1, dead);
    auto parts = decompose_sharp(b);
    CHECK(parts.size() == 1);
  }
}

TEST_CASE("finite index") {
  auto index_of = [](const ParityTransducer& r) { return finite_index(build_A_sharp(build_Ebar_j(r, 1), 1)); };
  CHECK(index_of(fixtures::full_omega()).holds);
  CHECK(index_of(fixtures::head_omega()).holds);
  IndexVerdict eq = index_of(fixtures::eq_omega());
  CHECK_FALSE(eq.holds);
  REQUIRE(eq.witness);
}

TEST_CASE("omega recognizability") {
  OmegaRecVerdict eq = is_omega_recognizable(fixtures::eq_omega());
  CHECK_FALSE(eq.holds);
  CHECK(eq.failing_j == 1);
  CHECK(is_omega_recognizable(fixtures::full_omega()).holds);
  OmegaRecVerdict head = is_omega_recognizable(fixtures::head_omega());
  CHECK(head.holds);
  CHECK(head.per_j.size() == 2);

  SUBCASE("incomplete input is completed") {
    ParityTransducer p = fixtures::head_omega();
    for (int s = 0; s < p.alphabet.size(); ++s) p.delta[static_cast<std::size_t>(p.find("bad")) * p.alphabet.size() + s] = -1;
    CHECK(is_omega_recognizable(p).holds);
  }
}
