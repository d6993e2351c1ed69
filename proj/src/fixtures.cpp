#include "wordrel/fixtures.hpp"

namespace wordrel::fixtures {

namespace {

const Tapes kAB2{{"a", "b"}, {"a", "b"}};

int sym(const Alphabet& al, const Letter& x, const Letter& y) { return al.at(Symbol{x, y}); }

Alphabet pair_alphabet() { return Alphabet::product({{"a", "b"}, {"a", "b"}}); }

DetTransducer word_pair(const std::vector<Letter>& u, const std::vector<Letter>& v) {
  DetTransducer t;
  t.tapes = kAB2;
  int cur = t.add_state(0, false, "s0");
  t.initial = cur;
  int n = 1;
  auto chain = [&](int tape, const std::vector<Letter>& w) {
    for (const auto& x : w) {
      int nx = t.add_state(tape, false, "s" + std::to_string(n++));
      t.add(cur, x, nx);
      cur = nx;
    }
  };
  chain(0, u);
  // the state reading tape 1's endmarker hands over to tape 2
  int next = t.add_state(1, false, "s" + std::to_string(n++));
  t.add(cur, t.endmarker, next);
  cur = next;
  chain(1, v);
  int acc = t.add_state(1, true, "acc");
  t.add(cur, t.endmarker, acc);
  return t;
}

}  // namespace

SyncTransducer eq2() {
  SyncTransducer t(kAB2);
  const Alphabet& al = t.nfa.alphabet;
  int q = t.nfa.add_state(true, "q");
  t.nfa.add_initial(q);
  t.nfa.add_edge(q, sym(al, "a", "a"), q);
  t.nfa.add_edge(q, sym(al, "b", "b"), q);
  return t;
}

SyncTransducer tot2() {
  SyncTransducer t(kAB2);
  const Alphabet& al = t.nfa.alphabet;
  int both = t.nfa.add_state(true, "both");
  int left = t.nfa.add_state(true, "left");
  int right = t.nfa.add_state(true, "right");
  t.nfa.add_initial(both);
  for (const char* x : {"a", "b"}) {
    for (const char* y : {"a", "b"}) t.nfa.add_edge(both, sym(al, x, y), both);
    for (int from : {both, left}) t.nfa.add_edge(from, sym(al, x, kPad), left);
    for (int from : {both, right}) t.nfa.add_edge(from, sym(al, kPad, x), right);
  }
  return t;
}

SyncTransducer len1() {
  SyncTransducer t(kAB2);
  int q = t.nfa.add_state(true, "q");
  t.nfa.add_initial(q);
  t.nfa.add_edge(q, sym(t.nfa.alphabet, "a", "b"), q);
  return t;
}

ParityTransducer eq_omega() {
  ParityTransducer p(pair_alphabet());
  int eq = p.add_state(2, "eq"), bad = p.add_state(1, "bad");
  for (int s = 0; s < p.alphabet.size(); ++s) {
    const Symbol& x = p.alphabet.symbol(s);
    p.set(eq, s, x[0] == x[1] ? eq : bad);
    p.set(bad, s, bad);
  }
  return p;
}

ParityTransducer full_omega() {
  ParityTransducer p(pair_alphabet());
  int q = p.add_state(2, "q");
  for (int s = 0; s < p.alphabet.size(); ++s) p.set(q, s, q);
  return p;
}

ParityTransducer head_omega() {
  ParityTransducer p(pair_alphabet());
  int start = p.add_state(1, "start"), good = p.add_state(2, "good"), bad = p.add_state(1, "bad");
  for (int s = 0; s < p.alphabet.size(); ++s) {
    const Symbol& x = p.alphabet.symbol(s);
    p.set(start, s, x[0] == x[1] ? good : bad);
    p.set(good, s, good);
    p.set(bad, s, bad);
  }
  return p;
}

Dvpa cr() {
  Dvpa d;
  d.calls = {"c"};
  d.returns = {"r"};
  d.stack = {"g"};
  int qc = d.add_state(true, "qc"), qr = d.add_state(true, "qr");
  d.initial = qc;
  d.add_push(qc, 0, qc, 0);
  d.add_pop(qc, 0, 0, qr);
  d.add_pop(qr, 0, 0, qr);
  d.add_pop(qr, 0, kBottom, qr);
  return d;
}

Dvpa crx() {
  // Emptiness of the stack is tracked by a distinguished lowest stack letter.
  Dvpa d;
  d.calls = {"c"};
  d.returns = {"r"};
  d.internals = {"ar"};
  d.stack = {"g", "g0"};
  int qc0 = d.add_state(true, "qc0"), qc = d.add_state(true, "qc");
  int qr = d.add_state(true, "qr"), qre = d.add_state(true, "qre");
  d.initial = qc0;
  d.add_push(qc0, 0, qc, 1);
  d.add_push(qc, 0, qc, 0);
  d.add_pop(qc, 0, 0, qr);
  d.add_pop(qc, 0, 1, qre);
  d.add_pop(qr, 0, 0, qr);
  d.add_pop(qr, 0, 1, qre);
  d.add_int(qre, 0, qre);
  return d;
}

Dvpa cnrn() {
  Dvpa d;
  d.calls = {"c"};
  d.returns = {"r"};
  d.stack = {"g"};
  int s0 = d.add_state(true, "s0"), s1 = d.add_state(true, "s1");
  d.initial = s0;
  d.add_push(s0, 0, s0, 0);
  d.add_pop(s0, 0, 0, s1);
  d.add_pop(s1, 0, 0, s1);
  return d;
}

DetTransducer gr() { return word_pair({"a"}, {"b"}); }
DetTransducer gs() { return word_pair({"a", "a"}, {"b"}); }

Nfa astar_hash_bstar() {
  Nfa n(Alphabet::atomic({"a", "#", "b"}));
  int s = n.add_state(false, "s"), f = n.add_state(true, "f");
  n.add_initial(s);
  n.add_edge(s, 0, s);
  n.add_edge(s, 1, f);
  n.add_edge(f, 2, f);
  return n;
}

Nfa astar_b() {
  Nfa n(Alphabet::atomic({"a", "b"}));
  int s = n.add_state(false, "s"), f = n.add_state(true, "f");
  n.add_initial(s);
  n.add_edge(s, 0, s);
  n.add_edge(s, 1, f);
  return n;
}

}  // namespace wordrel::fixtures
