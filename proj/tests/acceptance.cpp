// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>

#include "wordrel/automatic_rec.hpp"
#include "wordrel/dvpa_regular.hpp"
#include "wordrel/fixtures.hpp"
#include "wordrel/generators.hpp"
#include "wordrel/omega_rec.hpp"
#include "wordrel/oracles.hpp"
#include "wordrel/reductions.hpp"
#include "wordrel/slender.hpp"

using namespace wordrel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  failures += !o.ok;
  std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, title, seconds_since(t0),
              o.note.empty() ? "" : ": ", o.note.c_str());
  std::fflush(stdout);
}

// --- criterion 1

Outcome fixture_dvpas() {
  Outcome o;
  auto t0 = Clock::now();
  PairVerdict cr = is_regular(fixtures::cr());
  double t_cr = seconds_since(t0);
  o.require(cr.holds, "c*r* machine reported not regular");
  o.require(t_cr < 1.0, "c*r* machine took " + std::to_string(t_cr) + " s");

  t0 = Clock::now();
  Dvpa crx = fixtures::crx();
  PairVerdict v = is_regular(crx);
  double t_crx = seconds_since(t0);
  o.require(!v.holds, "bottom-marker machine reported regular");
  o.require(t_crx < 1.0, "bottom-marker machine took " + std::to_string(t_crx) + " s");
  if (!v.holds) {
    Dvpa dc = complete_dvpa(crx);
    o.require(v.left && v.right, "no witness pair");
    auto sep = bounded_separator(dc, *v.left, *v.right, 400);
    o.require(sep.has_value(), "bounded_separator found no separating word");
    if (sep) {
      auto l = dvpa_run(dc, *v.left, *sep), r = dvpa_run(dc, *v.right, *sep);
      o.require((l && dc.accepting[l->state]) != (r && dc.accepting[r->state]), "separator does not separate");
      o.note = "separator length " + std::to_string(sep->size()) + ", depth bound " + std::to_string(v.m);
    }
  }
  return o;
}

// --- criterion 2

Outcome recognizability_agreement() {
  Outcome o;
  int total = 0, rec = 0;
  for (std::uint64_t seed = 0; seed < 220; ++seed) {
    int states = 1 + static_cast<int>(seed % 3);
    SyncTransducer t = random_sync(seed, states, 0.3 + 0.05 * static_cast<double>(seed % 5));
    bool expect = ccg06_recognizable(t);
    o.require(is_recognizable(t).holds == expect, "disagreement on seed " + std::to_string(seed));
    rec += expect;
    ++total;
  }
  if (o.ok) o.note = std::to_string(total) + " transducers, " + std::to_string(rec) + " recognizable";
  return o;
}

// --- criterion 3

Outcome slenderness() {
  Outcome o;
  int non = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Nfa a = random_nfa(seed, {1 + static_cast<int>(seed % 5), 2, 0.25 + 0.05 * static_cast<double>(seed % 3), 0, 0.3, 1});
    SlenderVerdict v = is_slender(a);
    o.require(v.holds == brute_slender(a), "disagreement on seed " + std::to_string(seed));
    if (v.holds) continue;
    ++non;
    o.require(v.witness && replay_witness(a, *v.witness), "witness does not replay, seed " + std::to_string(seed));
    if (!v.witness) continue;
    auto ws = pump_witness(*v.witness, 2);
    std::set<Word> distinct(ws.begin(), ws.end());
    o.require(distinct.size() >= 3, "fewer than 3 pumped words, seed " + std::to_string(seed));
    for (const auto& w : ws) o.require(w.size() == ws[0].size() && accepts(a, w), "bad pumped word");
  }
  o.require(!is_slender(fixtures::astar_hash_bstar()).holds, "a*#b* reported slender");
  if (o.ok) o.note = "500 automata, " + std::to_string(non) + " not slender";
  return o;
}

// --- criterion 4

Outcome profiles() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    BuchiAutomaton a = random_nfa(seed / 10, {4, 2, 0.3, 0, 0.3, 1});
    UPWord w = random_lasso(seed, 2, 4, 4);
    o.require(up_accepts_profiles(a, w) == lasso_accepts(a, w), "disagreement on sample " + std::to_string(seed));
  }
  std::mt19937_64 rng(9);
  auto rand_word = [&](int maxlen) {
    Word w(rng() % (maxlen + 1));
    for (auto& x : w) x = static_cast<int>(rng() % 2);
    return w;
  };
  for (int i = 0; i < 500; ++i) {
    BuchiAutomaton a = random_nfa(static_cast<std::uint64_t>(i) / 5, {4, 2, 0.35, 0, 0.3, 1});
    Word x = rand_word(5), y = rand_word(5), z = rand_word(5);
    auto px = profile_of_word(a, x), py = profile_of_word(a, y), pz = profile_of_word(a, z);
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    auto id = profile_identity(a);
    o.require(profile_of_word(a, xy) == profile_product(px, py), "homomorphism fails on split " + std::to_string(i));
    o.require(profile_product(profile_product(px, py), pz) == profile_product(px, profile_product(py, pz)),
              "associativity fails on split " + std::to_string(i));
    o.require(profile_product(id, px) == px && profile_product(px, id) == px, "identity law fails");
  }
  if (o.ok) o.note = "1000 lassos, 500 splits";
  return o;
}

// --- criterion 5

Outcome omega_pipeline() {
  Outcome o;
  o.require(!is_omega_recognizable(fixtures::eq_omega()).holds, "EQ reported omega-recognizable");
  o.require(is_omega_recognizable(fixtures::full_omega()).holds, "FULL reported not omega-recognizable");
  o.require(is_omega_recognizable(fixtures::head_omega()).holds, "HEAD reported not omega-recognizable");
  const std::vector<Letter> ab{"a", "b"};
  long checked = 0;
  for (const auto& r : {fixtures::eq_omega(), fixtures::full_omega(), fixtures::head_omega()}) {
    BuchiAutomaton e = build_Ebar_j(r, 1);
    SharpTransducer s = build_A_sharp(e, 1);
    auto sharp = [&](const Word& u, const Word& v) {
      std::vector<Letter> w;
      for (int x : u) w.push_back(ab[x]);
      w.push_back(s.hash);
      for (int x : v) w.push_back(ab[x]);
      return w;
    };
    for (int n = 0; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        for_each_word(2, n, [&](const Word& u) {
          for_each_word(2, m, [&](const Word& v) {
            for_each_word(2, n, [&](const Word& x) {
              for_each_word(2, m, [&](const Word& y) {
                UPWord w;
                for (int i = 0; i < n; ++i) w.u.push_back(e.alphabet.at(Symbol{ab[u[i]], ab[x[i]]}));
                for (int i = 0; i < m; ++i) w.v.push_back(e.alphabet.at(Symbol{ab[v[i]], ab[y[i]]}));
                bool expect = !up_accepts_profiles(e, w);
                o.require(sync_accepts(s.t, {sharp(u, v), sharp(x, y)}) == expect, "A_# differs from profiles");
                ++checked;
              });
            });
          });
        });
  }
  if (o.ok) o.note = std::to_string(checked) + " slice pairs";
  return o;
}

// --- criterion 6

Outcome omega_finite_bridge() {
  Outcome o;
  int finite = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    BuchiAutomaton a = random_nfa(seed, {4, 2, 0.25, 0, 0.3, 1});
    bool f = omega_finite(trim_buchi(a));
    o.require(f == is_slender(trim_buchi(a)).holds, "disagreement on seed " + std::to_string(seed));
    finite += f;
  }
  if (o.ok) o.note = "200 automata, " + std::to_string(finite) + " with finitely many words";
  return o;
}

// --- criterion 7

std::uint64_t pack(const Configuration& x) {
  std::uint64_t bits = 0;
  for (int g : x.stack) bits = bits << 1 | static_cast<std::uint64_t>(g);
  return static_cast<std::uint64_t>(x.state) << 40 | x.stack.size() << 32 | bits;
}

// Configurations reachable from c while the stack stays at or below `height`.
std::unordered_set<std::uint64_t> bounded_reach(const Vpa& v, const Configuration& c, std::size_t height) {
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

Outcome post_star_soundness() {
  Outcome o;
  long checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dvpa d = random_dvpa(seed, 3, 2, 0.6);
    Configuration start{0, {}};
    if (seed % 2) start.stack = {static_cast<int>(seed % 4 / 2), 1};
    ConfigAutomaton p = post_star(d, single_config(d, start));
    // A detour above height 4 is at most |P|^2 deep before it can be shortcut.
    auto reach = bounded_reach(d, start, 4 + 9);
    for (int q = 0; q < d.size(); ++q)
      for (int h = 0; h <= 4; ++h)
        for_each_word(2, h, [&](const Word& s) {
          Configuration c{q, s};
          o.require(p.contains(c) == (reach.count(pack(c)) > 0), "disagreement on seed " + std::to_string(seed));
          ++checked;
        });
  }
  if (o.ok) o.note = "100 machines, " + std::to_string(checked) + " configurations";
  return o;
}

// --- criterion 8

Outcome gadget() {
  Outcome o;
  auto loop = [](std::vector<Letter> x) {
    x.push_back("#");
    return LetterLasso{{}, x};
  };
  GadgetPair same = build_gadget(fixtures::gr(), fixtures::gr());
  o.require(det_buchi_lasso_accepts(same.br, loop({"a"}), loop({"b"})), "B_R rejects ((a#)^w,(b#)^w)");
  o.require(!det_buchi_lasso_accepts(same.bs, loop({"a"}), loop({"b"})), "B_S accepts ((a#)^w,(b#)^w)");
  DetBuchiTransducer only = same.br;
  only.accepting.assign(only.size(), 0);
  only.accepting[same.qa_r] = 1;
  o.require(det_buchi_lasso_accepts(only, loop({"a"}), loop({"b"})), "B_R run avoids q_a^R");

  GadgetPair g = build_gadget(fixtures::gr(), fixtures::gs());
  const std::vector<Letter> ab{"a", "b"};
  int lassos = 0;
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for_each_word(2, n, [&](const Word& x) {
        for_each_word(2, m, [&](const Word& y) {
          std::vector<Letter> lx, ly;
          for (int c : x) lx.push_back(ab[c]);
          for (int c : y) ly.push_back(ab[c]);
          o.require(det_buchi_lasso_accepts(g.br, loop(lx), loop(ly)) == det_buchi_lasso_accepts(g.bs, loop(lx), loop(ly)),
                    "disjoint pair disagrees");
          ++lassos;
        });
      });
  if (o.ok) o.note = std::to_string(lassos) + " sampled lassos agree";
  return o;
}

// --- criterion 9

Outcome rn_family() {
  Outcome o;
  std::string sizes;
  for (int n = 1; n <= 3; ++n) {
    SyncTransducer t = generate_Rn(n);
    o.require(t.nfa.size() <= kRnConstant * n * n, "R_" + std::to_string(n) + " too large");
    o.require(is_recognizable(t).holds, "R_" + std::to_string(n) + " reported not recognizable");
    sizes += (n > 1 ? ", " : "") + std::to_string(t.nfa.size());
  }
  if (o.ok) o.note = "states " + sizes + " (bound " + std::to_string(kRnConstant) + "n^2)";
  return o;
}

}  // namespace

int main() {
  criterion(1, "regularity of the c*r* machines", fixture_dvpas);
  criterion(2, "is_recognizable agrees with ccg06_recognizable", recognizability_agreement);
  criterion(3, "is_slender agrees with brute_slender; witnesses pump", slenderness);
  criterion(4, "transition profiles agree with lasso runs", profiles);
  auto t5 = Clock::now();
  criterion(5, "omega-recognizability verdicts and A_# slices", [&] {
    Outcome o = omega_pipeline();
    o.require(seconds_since(t5) < 120, "over 2 minutes");
    return o;
  });
  criterion(6, "omega_finite agrees with slenderness", omega_finite_bridge);
  criterion(7, "post* agrees with bounded search", post_star_soundness);
  criterion(8, "equivalence gadget", gadget);
  criterion(9, "R_n size and recognizability", rn_family);
  return failures ? 1 : 0;
}
