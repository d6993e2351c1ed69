#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordrel/transducer.hpp"
#include "wordrel/vpa.hpp"

namespace wordrel {

// Configuration words: a state letter followed by the stack, top first.  The letters are
// the state names, then the stack names; states get an "@" prefix if the two clash.
std::vector<Letter> config_letters(const Dvpa& d);
std::vector<Letter> config_word(const Dvpa& d, const Configuration& c);
std::optional<Configuration> config_of_word(const Dvpa& d, const std::vector<Letter>& w);

// Reachable configurations of d as an automaton over config_letters(d).
Nfa reachable_configs(const Dvpa& d);

// |P|^3 + 1
long long depth_bound(const Dvpa& d);

// Pairs of reachable configuration words.
SyncTransducer reachable_pairs(const Dvpa& d);
// Pairs (p, a b), (p, a b') with |a| >= m and b != b'.  m defaults to depth_bound(d).
SyncTransducer deep_equal_checker(const Dvpa& d, long long m = -1);
// Pairs of configurations of d that are not d-equivalent.
SyncTransducer nonequiv_transducer(const Dvpa& d, WmMethod wm = WmMethod::kSummary);

struct PairVerdict {
  bool holds = true;  // regular
  std::optional<Configuration> left, right;
  std::optional<Word> separator;  // checked by running both configurations
  int states = 0;                 // after completion
  long long m = 0;
  std::size_t explored = 0;
  std::string detail;
};

struct RegularityOptions {
  bool separator = true;
  std::size_t separator_max_length = std::size_t{1} << 22;
  WmMethod wm = WmMethod::kSummary;  // explicit product only
};

// Regularity of L(d).  Works on the completed machine; witnesses refer to its states.
PairVerdict is_regular(const Dvpa& d, const RegularityOptions& opt = {});
// Same question through the explicit intersection of the three transducers; small inputs.
PairVerdict is_regular_explicit(const Dvpa& d, WmMethod wm = WmMethod::kSummary);

}  // namespace wordrel
