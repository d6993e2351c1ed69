#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordrel/nfa.hpp"

namespace wordrel {

using WordTuple = std::vector<std::vector<Letter>>;
using Tapes = std::vector<std::vector<Letter>>;

// (Σ1∪{_}) × … × (Σk∪{_}) without the all-pad tuple.
Alphabet padded_alphabet(const Tapes& tapes);
// Accepts exactly the encodings that never show a letter after a pad in the same component.
Nfa well_padded(const Tapes& tapes);

struct SyncTransducer {
  Tapes tapes;
  Nfa nfa;  // over padded_alphabet(tapes)

  SyncTransducer() = default;
  explicit SyncTransducer(Tapes t);
  int arity() const { return static_cast<int>(tapes.size()); }
};

// Describes the first padding-discipline violation reachable from an initial state.
std::optional<std::string> padding_violation(const SyncTransducer& t);

Word pad_encode(const Alphabet& padded, const WordTuple& u);
std::optional<WordTuple> pad_decode(const Alphabet& padded, const Word& w);

bool sync_accepts(const SyncTransducer& t, const WordTuple& u);
Nfa sync_as_nfa(const SyncTransducer& t);
SyncTransducer sync_of_nfa(const Tapes& tapes, Nfa n);
SyncTransducer sync_intersect(const SyncTransducer& a, const SyncTransducer& b);
SyncTransducer sync_complement(const SyncTransducer& t, std::size_t budget = state_budget());

struct DetTransducer {
  Tapes tapes;
  Letter endmarker = "#";
  std::vector<std::string> names;
  std::vector<int> tape;  // 0-based active tape per state
  int initial = 0;
  std::vector<char> accepting;
  std::vector<std::map<Letter, int>> delta;
  std::vector<int> eps;  // -1 when absent

  int size() const { return static_cast<int>(tape.size()); }
  int arity() const { return static_cast<int>(tapes.size()); }
  int add_state(int tape_index, bool acc, std::string name = "");
  void add(int p, const Letter& a, int q);
  void add_eps(int p, int q);
  int find(const std::string& name) const;  // -1 when absent
  void validate() const;
};

// Runs on u extended with one endmarker per tape; stalls and ε-divergence reject.
bool det_accepts(const DetTransducer& t, const WordTuple& u);

}  // namespace wordrel
