#include <doctest.h>

#include <random>

#include "wordrel/fixtures.hpp"
#include "wordrel/reductions.hpp"

using namespace wordrel;

namespace {

const std::vector<Letter> kAb{"a", "b"};

std::vector<Letter> spell(const Word& w) {
  std::vector<Letter> r;
  for (int x : w) r.push_back(kAb[x]);
  return r;
}

// Partial machine on {a,b} x {a,b} with some ε moves and ε cycles.
DetTransducer random_det(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; };
  DetTransducer t;
  t.tapes = {kAb, kAb};
  for (int q = 0; q < n; ++q) t.add_state(static_cast<int>(rng() % 2), coin(0.4), "p" + std::to_string(q));
  for (int q = 0; q < n; ++q) {
    if (coin(0.15)) {
      t.add_eps(q, static_cast<int>(rng() % n));
      continue;
    }
    for (const Letter& x : {Letter("a"), Letter("b"), t.endmarker})
      if (coin(0.75)) t.add(q, x, static_cast<int>(rng() % n));
  }
  return t;
}

int incoming(const DetTransducer& t, int target) {
  int c = 0;
  for (int q = 0; q < t.size(); ++q) {
    for (const auto& [x, to] : t.delta[q]) c += to == target;
    c += t.eps[q] == target;
  }
  return c;
}

void check_normal_form(const DetTransducer& a) {
  NormalForm nf = normalize(a);
  const DetTransducer& t = nf.t;
  CHECK(incoming(t, t.initial) == 0);
  CHECK(t.delta[nf.accept].empty());
  CHECK(t.delta[nf.reject].empty());
  for (int q = 0; q < t.size(); ++q) {
    CHECK(t.eps[q] < 0);
    CHECK(static_cast<bool>(t.accepting[q]) == (q == nf.accept));
    for (const auto& [x, to] : t.delta[q])
      if (to == nf.accept || to == nf.reject) CHECK(x == t.endmarker);
  }
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for_each_word(2, n, [&](const Word& u) {
        for_each_word(2, m, [&](const Word& v) {
          WordTuple w{spell(u), spell(v)};
          bool acc = det_accepts(a, w);
          CHECK(det_accepts(t, w) == acc);
          // Every run ends in one of the two sinks.
          CHECK(det_accepts(t, w) != det_accepts([&] {
                  DetTransducer r = t;
                  r.accepting.assign(r.size(), 0);
                  r.accepting[nf.reject] = 1;
                  return r;
                }(), w));
        });
      });
}

LetterLasso hash_loop(const std::vector<Letter>& x) {
  LetterLasso l;
  l.v = x;
  l.v.push_back("#");
  return l;
}

}  // namespace

TEST_CASE("normal form") {
  SUBCASE("word pair") {
    NormalForm nf = normalize(fixtures::gr());
    int sinks = 0;
    for (int q = 0; q < nf.t.size(); ++q) sinks += nf.t.delta[q].empty();
    CHECK(sinks == 2);
    check_normal_form(fixtures::gr());
    check_normal_form(fixtures::gs());
  }
  SUBCASE("random machines") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) check_normal_form(random_det(seed, 2 + static_cast<int>(seed % 4)));
  }
  SUBCASE("eps chains") {
    DetTransducer t;
    t.tapes = {kAb, kAb};
    int s = t.add_state(0, false, "s"), e = t.add_state(1, false, "e"), g = t.add_state(0, false, "g");
    int f = t.add_state(1, true, "f"), h = t.add_state(1, true, "h");
    t.add_eps(s, e);
    t.add(e, "b", e);
    t.add(e, "#", g);  // tape 2 closes while tape 1 is open
    t.add(g, "a", g);
    t.add(g, "b", h);
    t.add(g, "#", f);
    t.add_eps(f, f);
    t.add_eps(h, h);
    check_normal_form(t);
    CHECK_THROWS_AS(normalize([] {
                      DetTransducer bad;
                      bad.tapes = {{"a", "#"}, {"b"}};
                      bad.add_state(0, true);
                      return bad;
                    }()),
                    InputError);
  }
}

TEST_CASE("letter lassos") {
  LetterLasso l = parse_letter_lasso("a(ba)^w");
  CHECK(l.u == std::vector<Letter>{"a"});
  CHECK(l.v == std::vector<Letter>{"b", "a"});
  LetterLasso m = parse_letter_lasso("ab (c #)");
  CHECK(m.u == std::vector<Letter>{"ab"});
  CHECK(m.v == std::vector<Letter>{"c", "#"});
  CHECK(parse_letter_lasso("(a#)").u.empty());
  CHECK_THROWS_AS(parse_letter_lasso("a()"), InputError);
  CHECK_THROWS_AS(parse_letter_lasso("ab"), InputError);
  CHECK_THROWS_AS(parse_letter_lasso("(a)b"), InputError);
  CHECK_THROWS_AS(parse_letter_lasso("((a))"), InputError);
}

TEST_CASE("deterministic Büchi runs") {
  DetBuchiTransducer b;
  b.tapes = {kAb, kAb};
  SUBCASE("both tapes must advance") {
    int p = b.add_state(0, true);
    b.add(p, "a", p);
    LetterLasso as{{}, {"a"}};
    CHECK_FALSE(det_buchi_lasso_accepts(b, as, as));
    int q = b.add_state(1, false);
    b.delta[p]["a"] = q;
    b.add(q, "a", p);
    CHECK(det_buchi_lasso_accepts(b, as, as));
    b.accepting[p] = 0;
    CHECK_FALSE(det_buchi_lasso_accepts(b, as, as));
  }
  SUBCASE("pure eps cycle") {
    int p = b.add_state(0, true), q = b.add_state(1, true);
    b.add(p, "a", q);
    b.add_eps(q, p);
    LetterLasso as{{}, {"a"}};
    CHECK_FALSE(det_buchi_lasso_accepts(b, as, as));
    b.eps[q] = -1;
    b.add_eps(q, q);
    CHECK_FALSE(det_buchi_lasso_accepts(b, as, as));
  }
  SUBCASE("stall rejects") {
    int p = b.add_state(0, true), q = b.add_state(1, true);
    b.add(p, "a", q);
    b.add(q, "b", p);
    CHECK(det_buchi_lasso_accepts(b, {{}, {"a"}}, {{}, {"b"}}));
    CHECK_FALSE(det_buchi_lasso_accepts(b, {{}, {"a"}}, {{"b"}, {"a"}}));
    CHECK(det_buchi_lasso_accepts(b, {{"a", "a"}, {"a"}}, {{}, {"b"}}));
    CHECK_THROWS_AS(det_buchi_lasso_accepts(b, {{"a"}, {}}, {{}, {"b"}}), InputError);
  }
}

TEST_CASE("equivalence gadget") {
  SUBCASE("common pair separates the machines") {
    GadgetPair g = build_gadget(fixtures::gr(), fixtures::gr());
    LetterLasso l = hash_loop({"a"}), r = hash_loop({"b"});
    CHECK(det_buchi_lasso_accepts(g.br, l, r));
    CHECK_FALSE(det_buchi_lasso_accepts(g.bs, l, r));
    // The accepting visits come from q_a of the R copy alone.
    DetBuchiTransducer only = g.br;
    only.accepting.assign(only.size(), 0);
    only.accepting[g.qa_r] = 1;
    CHECK(det_buchi_lasso_accepts(only, l, r));
  }
  SUBCASE("structure") {
    GadgetPair g = build_gadget(fixtures::gr(), fixtures::gs());
    CHECK(g.br.delta == g.bs.delta);
    CHECK(g.br.tape == g.bs.tape);
    CHECK(g.br.accepting == g.bs.accepting);
    CHECK(g.br.initial != g.bs.initial);
    CHECK(g.br.accepting[g.qa_r]);
    CHECK(g.br.accepting[g.qr_r]);
    CHECK(g.br.accepting[g.qr_s]);
    CHECK_FALSE(g.br.accepting[g.qa_s]);
    int accepting = 0;
    for (char c : g.br.accepting) accepting += c;
    CHECK(accepting == 3);
    for (int q = 0; q < g.br.size(); ++q) CHECK(g.br.eps[q] < 0);
    CHECK_NOTHROW(g.br.validate());
  }
  SUBCASE("disjoint relations agree on sampled lassos") {
    GadgetPair g = build_gadget(fixtures::gr(), fixtures::gs());
    int accepted = 0;
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m)
        for_each_word(2, n, [&](const Word& x) {
          for_each_word(2, m, [&](const Word& y) {
            LetterLasso l = hash_loop(spell(x)), r = hash_loop(spell(y));
            bool a = det_buchi_lasso_accepts(g.br, l, r);
            CHECK(a == det_buchi_lasso_accepts(g.bs, l, r));
            accepted += a;
          });
        });
    CHECK(accepted > 0);
  }
  SUBCASE("soundness on shared pairs") {
    DetTransducer both = fixtures::gs();
    GadgetPair g = build_gadget(both, both);
    CHECK(det_buchi_lasso_accepts(g.br, hash_loop({"a", "a"}), hash_loop({"b"})));
    CHECK_FALSE(det_buchi_lasso_accepts(g.bs, hash_loop({"a", "a"}), hash_loop({"b"})));
  }
  SUBCASE("alphabet mismatch") {
    DetTransducer other = fixtures::gs();
    other.tapes[1] = {"c"};
    CHECK_THROWS_AS(build_gadget(fixtures::gr(), other), InputError);
  }
}
