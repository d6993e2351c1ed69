#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordrel/nfa.hpp"

namespace wordrel {

inline constexpr int kBottom = -1;  // popped symbol of a bottom pop
inline const std::string kBottomName = "BOT";

enum class LetterKind { kCall, kReturn, kInternal };

struct PushRule {
  int from, call, to, gamma;
};
struct PopRule {
  int from, ret, gamma, to;  // gamma == kBottom pops the empty stack
};
struct IntRule {
  int from, sym, to;
};

// Visibly pushdown automaton with pop-on-empty.  The stored stack never holds ⊥.
// Input words are over alphabet(): calls, then returns, then internals.
struct Vpa {
  std::vector<Letter> calls, returns, internals;
  std::vector<Letter> stack;  // Γ without ⊥
  std::vector<std::string> names;
  std::vector<char> accepting;
  int initial = 0;
  std::vector<PushRule> pushes;
  std::vector<PopRule> pops;
  std::vector<IntRule> ints;

  int size() const { return static_cast<int>(accepting.size()); }
  int add_state(bool acc, std::string name = "");
  void add_push(int p, int call, int q, int gamma);
  void add_pop(int p, int ret, int gamma, int q);
  void add_int(int p, int sym, int q);
  int find(const std::string& name) const;

  Alphabet alphabet() const;
  int num_letters() const {
    return static_cast<int>(calls.size() + returns.size() + internals.size());
  }
  LetterKind kind(int letter) const;
  int local(int letter) const;  // index inside its kind
  bool deterministic() const;
  bool complete() const;
  void validate() const;
};

using Dvpa = Vpa;

struct Configuration {
  int state = 0;
  std::vector<int> stack;  // top first
  bool operator==(const Configuration& o) const { return state == o.state && stack == o.stack; }
  bool operator<(const Configuration& o) const {
    return state != o.state ? state < o.state : stack < o.stack;
  }
};

// Successor lookup tables for deterministic runs.
class VpaIndex {
 public:
  explicit VpaIndex(const Vpa& v);
  // Unique successor or nullopt when the run stalls.
  std::optional<Configuration> step(const Configuration& c, int letter) const;
  int push_target(int p, int call, int* gamma) const;
  int pop_target(int p, int ret, int gamma) const;  // gamma may be kBottom
  int int_target(int p, int sym) const;

 private:
  const Vpa* v_;
  std::vector<int> push_to_, push_g_, pop_to_, int_to_;
  int nc_, nr_, ni_, ng_;
};

std::optional<Configuration> dvpa_run(const Dvpa& d, const Configuration& c, const Word& w);
bool dvpa_accepts(const Dvpa& d, const Word& w);

// Adds a rejecting sink so that every (state, letter, top) has a successor.
Dvpa complete_dvpa(const Dvpa& d);

// Product P×P over stack pairs Γ×Γ; bottom pops purged.
Vpa square(const Vpa& d);
int pair_index(const Vpa& d, int p, int q);

// Set of configurations: (p, γ1…γn) is in it iff nfa accepts γ1…γn from entry[p].
struct ConfigAutomaton {
  Nfa nfa;  // over atomic stack alphabet Γ
  std::vector<int> entry;

  bool contains(const Configuration& c) const;
};

ConfigAutomaton single_config(const Vpa& v, const Configuration& c);

// Pushdown rule ⟨p,γ⟩ → ⟨q,w⟩ with |w| ≤ 2 (top first).
struct PdsRule {
  int p, gamma, q;
  std::vector<int> w;
};

// Saturation over a P-automaton whose states 0..num_control-1 are the control states
// and have no incoming transitions.  Returns the saturated automaton.
Nfa post_star_pds(const std::vector<PdsRule>& rules, int num_control, const Nfa& pauto);

// VPA rules compiled as pushdown rules with an explicit ⊥ (index |Γ|).
std::vector<PdsRule> compile_rules(const Vpa& v);
ConfigAutomaton post_star(const Vpa& v, const ConfigAutomaton& c);

enum class WmMethod { kSummary, kPostStar };

// wm[x][y]: both copies move from pair x to pair y on a common well-matched word.
// Pairs are indexed by pair_index.
std::vector<std::vector<char>> well_matched_pairs(const Vpa& d, WmMethod m = WmMethod::kSummary);
// Single-copy relation p →wm q.
std::vector<std::vector<char>> well_matched_single(const Vpa& v);

// Unmatched calls and returns of a word, by position.
struct Nesting {
  std::vector<int> unmatched_calls;
  std::vector<int> unmatched_returns;
  std::vector<std::pair<int, int>> matched;  // (call position, return position)
};
Nesting nesting(const Vpa& v, const Word& w);
bool well_matched(const Vpa& v, const Word& w);

}  // namespace wordrel
