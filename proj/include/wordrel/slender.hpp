#pragma once

#include <optional>
#include <vector>

#include "wordrel/nfa.hpp"

namespace wordrel {

// Certificate of non-slenderness: q0 -w0-> q -w-> q, q -u1-> p1, q -u2-> p2 with
// u1[index] != u2[index], p_i -w_i-> p_i and p_i -v_i-> F.
struct SlenderWitness {
  int q = -1;
  Word w0, w;
  Word u1, u2;
  int index = 0;  // 0-based
  int p1 = -1, p2 = -1;
  Word w1, w2, v1, v2;
};

struct SlenderVerdict {
  bool holds = false;  // true when slender
  std::optional<SlenderWitness> witness;
};

SlenderVerdict is_slender(const Nfa& a);

// Checks every run condition of the witness by direct simulation.
bool replay_witness(const Nfa& a, const SlenderWitness& s);
// Words w0 W^i u W'^j v for i+j = n, equal length, using the divergent branch that leaves w^ω.
std::vector<Word> pump_witness(const SlenderWitness& s, int n);

}  // namespace wordrel
