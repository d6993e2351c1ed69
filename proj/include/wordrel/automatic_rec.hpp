#pragma once

#include <string>
#include <vector>

#include "wordrel/dvpa_regular.hpp"
#include "wordrel/transducer.hpp"

namespace wordrel {

// Renames second-tape letters that also occur on the first tape (a -> a2, a22, ...).
SyncTransducer disjointify(const SyncTransducer& t);

// Deterministic VPA for rev(u) # v, (u,v) in R: calls are tape-1 letters, returns tape-2
// letters, and the single internal letter is the separator.
struct LrDvpa {
  Dvpa dvpa;
  Letter separator = "#";
  int push_states = 0;  // states 0..push_states-1 are the subsets of the push phase
};

LrDvpa build_LR_dvpa(const SyncTransducer& t, std::size_t budget = state_budget());
// The input word rev(u) separator v of the LR machine.
Word lr_word(const LrDvpa& lr, const std::vector<Letter>& u, const std::vector<Letter>& v);

struct RecognizabilityVerdict {
  bool holds = true;
  PairVerdict regularity;
  int lr_states = 0;
  int lr_stack = 0;
  std::string detail;
};

RecognizabilityVerdict is_recognizable(const SyncTransducer& t, const RegularityOptions& opt = {});

}  // namespace wordrel
