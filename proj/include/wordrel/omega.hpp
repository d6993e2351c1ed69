#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wordrel/nfa.hpp"

namespace wordrel {

// Epsilon-free Nfa read with Büchi acceptance.
using BuchiAutomaton = Nfa;

// Ultimately periodic word u v^ω over one (possibly tuple) alphabet.
struct UPWord {
  Word u;
  Word v;
};

bool lasso_accepts(const BuchiAutomaton& a, const UPWord& w);

// Same ω-word?  Compares unrollings long enough to cover both periods.
bool same_omega_word(const UPWord& x, const UPWord& y);
// Rewrites lassos to a common prefix length and a common period length.
std::vector<UPWord> common_lengths(const std::vector<UPWord>& ws);

enum Mark : std::uint8_t { kNone = 0, kEdge = 1, kThroughF = 2 };

struct TransitionProfile {
  std::size_t owner = 0;  // structural fingerprint of the automaton
  int n = 0;
  std::vector<std::uint8_t> m;  // n*n marks

  std::uint8_t at(int p, int q) const { return m[static_cast<std::size_t>(p) * n + q]; }
  bool operator==(const TransitionProfile& o) const { return owner == o.owner && m == o.m; }
  bool operator<(const TransitionProfile& o) const { return m < o.m; }
};

struct ProfileHash {
  std::size_t operator()(const TransitionProfile& t) const;
};

std::size_t fingerprint(const Nfa& a);
TransitionProfile profile_identity(const BuchiAutomaton& a);
TransitionProfile profile_of_letter(const BuchiAutomaton& a, int sym);
TransitionProfile profile_of_word(const BuchiAutomaton& a, const Word& w);
TransitionProfile profile_product(const TransitionProfile& s, const TransitionProfile& t);
// Some initial→p edge in tu and, in tv, an F-marked cycle reachable from p.
bool profile_pair_accepts(const BuchiAutomaton& a, const TransitionProfile& tu,
                          const TransitionProfile& tv);
// States p from which tv reaches a cycle carrying an F mark.
std::vector<char> profile_f_cycle_from(const TransitionProfile& tv);
bool up_accepts_profiles(const BuchiAutomaton& a, const UPWord& w);

// Deterministic automaton over a tuple alphabet with state priorities.
struct ParityTransducer {
  Alphabet alphabet;
  std::vector<std::string> names;
  std::vector<int> priority;
  std::vector<int> delta;  // size()*|alphabet|, -1 when undefined
  int initial = 0;

  ParityTransducer() = default;
  explicit ParityTransducer(Alphabet a) : alphabet(std::move(a)) {}
  int size() const { return static_cast<int>(priority.size()); }
  int arity() const { return alphabet.arity(); }
  int add_state(int prio, std::string name = "");
  void set(int p, int sym, int q);
  int next(int q, int sym) const { return delta[static_cast<std::size_t>(q) * alphabet.size() + sym]; }
  bool complete() const;
  int find(const std::string& name) const;
};

bool parity_lasso_accepts(const ParityTransducer& p, const UPWord& w);
ParityTransducer complete_parity(const ParityTransducer& p);
ParityTransducer parity_complement(const ParityTransducer& p);
BuchiAutomaton parity_to_nba(const ParityTransducer& p);

BuchiAutomaton nba_intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);
BuchiAutomaton nba_union(const BuchiAutomaton& a, const BuchiAutomaton& b);
// r over (X̄,W̄), s over (W̄,Ȳ) with |W̄| = middle; result over (X̄,Ȳ).
BuchiAutomaton compose_j(const BuchiAutomaton& r, const BuchiAutomaton& s, int middle);
// Moves the first j components behind the remaining ones.
BuchiAutomaton swap_components(const BuchiAutomaton& a, int j);
BuchiAutomaton trim_buchi(const BuchiAutomaton& a);
bool omega_finite(const BuchiAutomaton& a);

}  // namespace wordrel
