#include <doctest.h>

#include <deque>
#include <random>
#include <set>
#include <unordered_set>

#include "wordrel/fixtures.hpp"
#include "wordrel/generators.hpp"
#include "wordrel/vpa.hpp"

using namespace wordrel;

namespace {

Word letters(const Dvpa& d, const std::string& s) {
  Alphabet al = d.alphabet();
  Word w;
  for (char c : s) w.push_back(al.at(Letter(1, c)));
  return w;
}

// Binary stack alphabet only.
std::uint64_t pack(const Configuration& x) {
  std::uint64_t bits = 0;
  for (int g : x.stack) bits = bits << 1 | static_cast<std::uint64_t>(g);
  return static_cast<std::uint64_t>(x.state) << 40 | x.stack.size() << 32 | bits;
}

// Every configuration reachable from c without exceeding the stack height bound.
std::unordered_set<std::uint64_t> bounded_reach(const Vpa& v, const Configuration& c,
                                                std::size_t height) {
  std::unordered_set<std::uint64_t> seen{pack(c)};
  std::deque<Configuration> work{c};
  auto visit = [&](Configuration n) {
    if (n.stack.size() <= height && seen.insert(pack(n)).second) work.push_back(std::move(n));
  };
  while (!work.empty()) {
    Configuration x = work.front();
    work.pop_front();
    for (const auto& t : v.pushes)
      if (t.from == x.state) {
        Configuration n{t.to, x.stack};
        n.stack.insert(n.stack.begin(), t.gamma);
        visit(std::move(n));
      }
    for (const auto& t : v.pops)
      if (t.from == x.state) {
        if (t.gamma == kBottom && x.stack.empty()) visit({t.to, {}});
        if (t.gamma != kBottom && !x.stack.empty() && x.stack[0] == t.gamma)
          visit({t.to, std::vector<int>(x.stack.begin() + 1, x.stack.end())});
      }
    for (const auto& t : v.ints)
      if (t.from == x.state) visit({t.to, x.stack});
  }
  return seen;
}

template <class F>
void all_configs(int states, int ng, std::size_t height, F&& f) {
  for (int p = 0; p < states; ++p)
    for (std::size_t h = 0; h <= height; ++h)
      for_each_word(ng, static_cast<int>(h), [&](const Word& s) { f(Configuration{p, s}); });
}

Word random_wm(std::mt19937_64& rng, const Dvpa& d, int depth) {
  Word w;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    int k = static_cast<int>(rng() % 3);
    if (k == 0 && !d.internals.empty()) {
      w.push_back(static_cast<int>(d.calls.size() + d.returns.size()));
    } else if (depth > 0) {
      w.push_back(static_cast<int>(rng() % d.calls.size()));
      Word in = random_wm(rng, d, depth - 1);
      w.insert(w.end(), in.begin(), in.end());
      w.push_back(static_cast<int>(d.calls.size() + rng() % d.returns.size()));
    }
  }
  return w;
}

}  // namespace

TEST_CASE("dvpa runs") {
  Dvpa cr = fixtures::cr();
  CHECK(cr.deterministic());
  auto r = dvpa_run(cr, {cr.initial, {}}, letters(cr, "ccrr"));
  REQUIRE(r.has_value());
  CHECK(r->state == cr.find("qr"));
  CHECK(r->stack.empty());
  r = dvpa_run(cr, {cr.initial, {}}, letters(cr, "crrr"));
  REQUIRE(r.has_value());
  CHECK(r->state == cr.find("qr"));
  CHECK(dvpa_accepts(cr, letters(cr, "ccr")));
  CHECK(dvpa_accepts(cr, {}));
  CHECK_FALSE(dvpa_accepts(cr, letters(cr, "rc")));
  Dvpa cnrn = fixtures::cnrn();
  CHECK_FALSE(dvpa_accepts(cnrn, letters(cnrn, "crr")));
  CHECK(dvpa_accepts(cnrn, letters(cnrn, "ccr")));
  Dvpa crx = fixtures::crx();
  CHECK(crx.deterministic());
  Alphabet al = crx.alphabet();
  Word w = letters(crx, "ccrr");
  w.push_back(al.at(Letter("ar")));
  CHECK(dvpa_accepts(crx, w));
  w = letters(crx, "ccr");
  w.push_back(al.at(Letter("ar")));
  CHECK_FALSE(dvpa_accepts(crx, w));
  CHECK_FALSE(dvpa_accepts(crx, letters(crx, "crr")));
}

TEST_CASE("well-matched words are stack invariant") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dvpa d = random_dvpa(seed, 3, 2, 0.9);
    Word w = random_wm(rng, d, 3);
    REQUIRE(well_matched(d, w));
    for (int p = 0; p < d.size(); ++p) {
      std::vector<int> s1{0}, s2{1, 0, 1};
      auto a = dvpa_run(d, {p, {}}, w), b = dvpa_run(d, {p, s1}, w), c = dvpa_run(d, {p, s2}, w);
      CHECK(a.has_value() == b.has_value());
      CHECK(a.has_value() == c.has_value());
      if (a && b && c) {
        CHECK(a->state == b->state);
        CHECK(a->state == c->state);
        CHECK(b->stack == s1);
        CHECK(c->stack == s2);
      }
    }
  }
}

TEST_CASE("square") {
  Dvpa cr = fixtures::cr();
  Vpa sq = square(cr);
  for (const auto& t : sq.pops) CHECK(t.gamma != kBottom);
  int qc = cr.find("qc"), qr = cr.find("qr");
  auto r = dvpa_run(sq, {pair_index(cr, qc, qc), {}}, letters(cr, "cr"));
  REQUIRE(r.has_value());
  CHECK(r->state == pair_index(cr, qr, qr));
  CHECK_FALSE(dvpa_run(sq, {pair_index(cr, qr, qr), {}}, letters(cr, "r")).has_value());
  // diagonal runs replay single runs
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Dvpa d = random_dvpa(seed, 3);
    Vpa s = square(d);
    Word w = random_wm(rng, d, 2);
    auto one = dvpa_run(d, {d.initial, {}}, w);
    auto two = dvpa_run(s, {s.initial, {}}, w);
    CHECK(one.has_value() == two.has_value());
    if (one && two) CHECK(two->state == pair_index(d, one->state, one->state));
  }
}

TEST_CASE("post_star agrees with bounded search") {
  Dvpa cnrn = fixtures::cnrn();
  ConfigAutomaton post = post_star(cnrn, single_config(cnrn, {cnrn.initial, {}}));
  CHECK(post.contains({0, {0, 0, 0}}));
  CHECK(post.contains({1, {0, 0}}));
  CHECK(post.contains({1, {}}));
  CHECK(post.contains({0, {}}));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dvpa d = random_dvpa(seed, 3, 2, 0.6);
    Configuration start{0, {}};
    if (seed % 2) start.stack = {static_cast<int>(seed % 4 / 2), 1};
    ConfigAutomaton p = post_star(d, single_config(d, start));
    // Summaries nest at most |P|^2 deep, so this bound exposes every low configuration.
    auto reach = bounded_reach(d, start, 4 + 9);
    all_configs(d.size(), 2, 4, [&](const Configuration& c) {
      CHECK(p.contains(c) == (reach.count(pack(c)) > 0));
    });
  }
}

TEST_CASE("well-matched pairs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Dvpa d = random_dvpa(seed, 3, 2, 0.7);
    auto a = well_matched_pairs(d, WmMethod::kSummary);
    auto b = well_matched_pairs(d, WmMethod::kPostStar);
    CHECK(a == b);
    const int n = static_cast<int>(a.size());
    for (int x = 0; x < n; ++x) {
      CHECK(a[x][x]);
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (a[x][y] && a[y][z]) CHECK(a[x][z]);
    }
  }
  Dvpa cr = fixtures::cr();
  auto wm = well_matched_pairs(cr);
  int qc = cr.find("qc"), qr = cr.find("qr");
  CHECK(wm[pair_index(cr, qc, qc)][pair_index(cr, qr, qr)]);
  CHECK_FALSE(wm[pair_index(cr, qr, qr)][pair_index(cr, qc, qc)]);
}

TEST_CASE("nesting decomposition") {
  Dvpa d = random_dvpa(1, 2);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Word w(rng() % 10);
    for (auto& x : w) x = static_cast<int>(rng() % d.num_letters());
    Nesting n = nesting(d, w);
    // Every position is internal, matched, or marked unmatched, and the marks are consistent.
    std::vector<int> role(w.size(), 0);
    for (auto [c, r] : n.matched) {
      CHECK(c < r);
      CHECK(d.kind(w[c]) == LetterKind::kCall);
      CHECK(d.kind(w[r]) == LetterKind::kReturn);
      role[c] = role[r] = 1;
      Word inner(w.begin() + c + 1, w.begin() + r);
      CHECK(well_matched(d, inner));
    }
    for (int c : n.unmatched_calls) {
      CHECK(role[c] == 0);
      role[c] = 2;
    }
    for (int r : n.unmatched_returns) {
      CHECK(role[r] == 0);
      role[r] = 3;
    }
    for (std::size_t k = 0; k < w.size(); ++k)
      CHECK((role[k] == 0) == (d.kind(w[k]) == LetterKind::kInternal));
    if (!n.unmatched_calls.empty() && !n.unmatched_returns.empty())
      CHECK(n.unmatched_returns.back() < n.unmatched_calls.front());
  }
}
