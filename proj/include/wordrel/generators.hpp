#pragma once

#include <cstdint>

#include "wordrel/omega.hpp"
#include "wordrel/transducer.hpp"
#include "wordrel/vpa.hpp"

namespace wordrel {

struct NfaShape {
  int states = 4;
  int letters = 2;
  double density = 0.3;  // probability of each (p, a, q) edge
  double eps = 0.0;      // probability of each (p, ε, q) edge, p != q
  double accepting = 0.3;
  int initial = 1;
};

// Atomic alphabet a, b, c, ...
Alphabet letters_alphabet(int k);

Nfa random_nfa(std::uint64_t seed, const NfaShape& shape);

// Binary relation over tapes {a,b} × {a,b}; padding modes are assigned per state so the
// discipline holds by construction.
SyncTransducer random_sync(std::uint64_t seed, int states, double density = 0.35);

Dvpa random_dvpa(std::uint64_t seed, int states, int stack_letters = 2, double density = 0.8);

// Complete deterministic parity machine over the product of two binary tapes.
ParityTransducer random_parity(std::uint64_t seed, int states, int max_priority = 3);

UPWord random_lasso(std::uint64_t seed, int letters, int max_prefix, int max_period);

}  // namespace wordrel
