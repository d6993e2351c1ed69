#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordrel/omega.hpp"
#include "wordrel/slender.hpp"
#include "wordrel/transducer.hpp"

namespace wordrel {

// Complement of E_j as a Büchi automaton over (u_1..u_j, v_1..v_j).
BuchiAutomaton build_Ebar_j(const ParityTransducer& r, int j);

// Finite-word encoding of the equivalence: (u#v, x#y) with |u|=|x|, |v|=|y| >= 1 and
// (u v^ω, x y^ω) in E.
struct SharpTransducer {
  SyncTransducer t;
  std::vector<Letter> sigma;  // tuple letters, in the order used by the comparator
  Letter hash = "#";
  int j = 1;
  int profiles = 0;  // distinct profiles reached
};

// `j` gives the number of components per side of ebar's alphabet.
SharpTransducer build_A_sharp(const BuchiAutomaton& ebar, int j, std::size_t budget = state_budget());
// Letter of the sharp alphabet for a j-tuple.
Letter tuple_letter(const Symbol& s);

// Lexicographically least words u#v of every class (nonempty v).
Nfa build_representatives(const SharpTransducer& s, std::size_t budget = state_budget());

struct SharpFactor {
  int from = -1, to = -1;  // the # edge
  Nfa prefix, period;      // over the letters without #
};
std::vector<SharpFactor> decompose_sharp(const Nfa& b, const Letter& hash = "#");

struct IndexVerdict {
  bool holds = true;  // finite index
  int representative_states = 0;
  int factors = 0;
  std::optional<int> factor;   // offending entry
  bool in_prefix = false;      // which side of it is not slender
  std::optional<SlenderWitness> witness;
  std::vector<Letter> alphabet;  // letters of the factor automata
  std::string detail;
};
IndexVerdict finite_index(const SharpTransducer& s, std::size_t budget = state_budget());

struct OmegaRecVerdict {
  bool holds = true;
  std::optional<int> failing_j;
  std::vector<IndexVerdict> per_j;
  std::vector<int> ebar_states, profiles;
  std::string detail;
};
OmegaRecVerdict is_omega_recognizable(const ParityTransducer& r, std::size_t budget = state_budget());

}  // namespace wordrel
