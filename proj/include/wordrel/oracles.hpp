#pragma once

#include <optional>
#include <stdexcept>

#include "wordrel/transducer.hpp"
#include "wordrel/vpa.hpp"

namespace wordrel {

// Raised when two independent signals of an oracle disagree.
class DiscrepancyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Slenderness by two routes: bounded layer enumeration of the structural conditions, and
// word counting per length on the trimmed subset automaton.
bool brute_slender(const Nfa& a);
// Only the counting signal.  true when the per-length counts stay bounded.
bool counting_slender(const Nfa& a);

// Recognizability of a binary automatic relation through a length-lexicographic set of
// representatives for E1, built with finite-word automata only.
bool ccg06_recognizable(const SyncTransducer& t, std::size_t budget = state_budget());

// Shortest word accepted from exactly one of the configurations.  Gives up (nullopt)
// after visiting `budget` configuration pairs.
std::optional<Word> bounded_separator(const Dvpa& d, const Configuration& c1,
                                      const Configuration& c2, int maxlen,
                                      std::size_t budget = 1000000);

// Bit-string relation {(u#v, t) : |u|=|v|=|t|=n, t has at most one 1, marking u[i]=v[i]}.
SyncTransducer generate_Rn(int n);
// Same relation by direct evaluation of its definition.
bool in_Rn(int n, const std::vector<Letter>& left, const std::vector<Letter>& right);
// State count bound used for generate_Rn: states <= kRnConstant * n^2.
inline constexpr int kRnConstant = 9;

}  // namespace wordrel
