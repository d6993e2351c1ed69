#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wordrel/alphabet.hpp"

namespace wordrel {

// Decision result with an optional word witness.
struct Verdict {
  bool holds = false;
  std::optional<Word> witness;
  std::string detail;
};

struct Edge {
  int sym;  // kEpsilon for epsilon moves
  int to;
};

struct Nfa {
  Alphabet alphabet;
  std::vector<int> initial;
  std::vector<char> accepting;
  std::vector<std::vector<Edge>> out;
  std::vector<std::string> names;  // optional; empty or one per state

  Nfa() = default;
  explicit Nfa(Alphabet a) : alphabet(std::move(a)) {}

  int size() const { return static_cast<int>(out.size()); }
  int add_state(bool acc = false);
  int add_state(bool acc, std::string name);
  void add_edge(int p, int sym, int q);
  void add_initial(int q);
  bool is_accepting(int q) const { return accepting[q] != 0; }
  bool has_epsilon() const;
  std::string state_name(int q) const;
  std::size_t num_edges() const;
};

struct Dfa {
  Alphabet alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<char> accepting;
  std::vector<int> delta;  // num_states * |alphabet|, total

  int next(int q, int a) const { return delta[static_cast<std::size_t>(q) * alphabet.size() + a]; }
  int run(const Word& w) const;
  Nfa to_nfa() const;
};

std::vector<int> eps_closure(const Nfa& a, std::vector<int> states);
// One letter step followed by epsilon closure; input assumed closed.
std::vector<int> step(const Nfa& a, const std::vector<int>& states, int sym);

Dfa determinize(const Nfa& a, std::size_t budget = state_budget());
Dfa complement(const Dfa& d);
// Merges equivalent states; assumes every state is reachable.
Dfa minimize(const Dfa& d);
Nfa complement_nfa(const Nfa& a, std::size_t budget = state_budget());
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa union_nfa(const Nfa& a, const Nfa& b);
// keep: 0-based component indices of the tuple symbols.
Nfa project(const Nfa& a, const std::vector<int>& keep);
// Maps every symbol through f into `target`; f may return kEpsilon.
Nfa relabel(const Nfa& a, const Alphabet& target, const std::function<int(int)>& f);
Verdict is_empty(const Nfa& a);
Nfa eliminate_epsilon(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);
bool accepts(const Dfa& d, const Word& w);
// Keeps states that are reachable and co-reachable.
Nfa trim(const Nfa& a);
bool is_finite_language(const Nfa& a);

// Tarjan SCCs; returns component id per vertex (reverse topological numbering).
std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int* count = nullptr);
std::vector<char> reachable_from(const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& sources);
std::vector<std::vector<int>> successor_graph(const Nfa& a);
std::vector<std::vector<int>> reverse_graph(const std::vector<std::vector<int>>& adj);

}  // namespace wordrel
