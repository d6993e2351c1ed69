#include "wordrel/automatic_rec.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace wordrel {

SyncTransducer disjointify(const SyncTransducer& t) {
  if (t.arity() != 2) throw InputError("disjointify: arity must be 2");
  std::set<Letter> used(t.tapes[0].begin(), t.tapes[0].end());
  std::map<Letter, Letter> rename;
  bool clash = false;
  for (const auto& b : t.tapes[1]) clash = clash || used.count(b);
  if (!clash) return t;
  used.insert(t.tapes[1].begin(), t.tapes[1].end());
  Tapes tapes{t.tapes[0], {}};
  for (const auto& b : t.tapes[1]) {
    Letter r = b + "2";
    while (used.count(r)) r += "2";
    used.insert(r);
    rename[b] = r;
    tapes[1].push_back(r);
  }
  SyncTransducer r(tapes);
  const Alphabet& from = t.nfa.alphabet;
  const Alphabet& to = r.nfa.alphabet;
  std::vector<int> map(from.size());
  for (int s = 0; s < from.size(); ++s) {
    Symbol sy = from.symbol(s);
    if (sy[1] != kPad) sy[1] = rename.at(sy[1]);
    map[s] = to.at(sy);
  }
  for (int q = 0; q < t.nfa.size(); ++q) r.nfa.add_state(t.nfa.accepting[q], t.nfa.names.size() > static_cast<std::size_t>(q) ? t.nfa.names[q] : "");
  for (int q : t.nfa.initial) r.nfa.add_initial(q);
  for (int q = 0; q < t.nfa.size(); ++q)
    for (const auto& e : t.nfa.out[q]) r.nfa.add_edge(q, e.sym == kEpsilon ? kEpsilon : map[e.sym], e.to);
  return r;
}

namespace {

using StateSet = std::vector<int>;  // sorted

std::string set_name(const StateSet& s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
  return r + "}";
}

bool meets(const StateSet& a, const StateSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

// Image of a state set under one symbol along forward or backward edges.
StateSet image(const std::vector<std::vector<std::vector<int>>>& adj, const StateSet& s, int sym) {
  StateSet r;
  for (int q : s) r.insert(r.end(), adj[q][sym].begin(), adj[q][sym].end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

}  // namespace

LrDvpa build_LR_dvpa(const SyncTransducer& in, std::size_t budget) {
  if (in.arity() != 2) throw InputError("build_LR_dvpa: arity must be 2");
  for (const auto& b : in.tapes[1])
    if (std::find(in.tapes[0].begin(), in.tapes[0].end(), b) != in.tapes[0].end())
      throw InputError("build_LR_dvpa: tape alphabets overlap on '" + b + "'");
  Nfa a = eliminate_epsilon(in.nfa);
  const Alphabet& al = a.alphabet;
  const int nq = a.size(), ns = al.size();
  std::vector<std::vector<std::vector<int>>> fwd(nq, std::vector<std::vector<int>>(ns)), bwd = fwd;
  for (int q = 0; q < nq; ++q)
    for (const auto& e : a.out[q]) {
      fwd[q][e.sym].push_back(e.to);
      bwd[e.to][e.sym].push_back(q);
    }
  const auto& s1 = in.tapes[0];
  const auto& s2 = in.tapes[1];
  auto sym = [&](const Letter& x, const Letter& y) { return al.at(Symbol{x, y}); };

  LrDvpa lr;
  Dvpa& d = lr.dvpa;
  d.calls = s1;
  d.returns = s2;
  Letter sep = "#";
  while (std::find(s1.begin(), s1.end(), sep) != s1.end() || std::find(s2.begin(), s2.end(), sep) != s2.end())
    sep += "'";
  lr.separator = sep;
  d.internals = {sep};

  StateSet fin, init(a.initial.begin(), a.initial.end());
  for (int q = 0; q < nq; ++q)
    if (a.accepting[q]) fin.push_back(q);
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());

  // Push phase: states from which the rest of rev(u), padded on tape 2, reaches F.
  std::map<StateSet, int> push_id;
  std::vector<StateSet> push_sets;
  auto push_state = [&](const StateSet& s) {
    auto [it, fresh] = push_id.emplace(s, static_cast<int>(push_sets.size()));
    if (fresh) {
      push_sets.push_back(s);
      check_budget(push_sets.size(), budget, "LR push states");
    }
    return it->second;
  };
  push_state(fin);
  for (std::size_t i = 0; i < push_sets.size(); ++i)
    for (const auto& x : s1) push_state(image(bwd, push_sets[i], sym(x, kPad)));
  const int np = static_cast<int>(push_sets.size());
  for (int i = 0; i < np; ++i) d.add_state(false, set_name(push_sets[i]));
  lr.push_states = np;
  d.initial = 0;
  // Stack letter (a, P): a was read while the backward set was P.
  auto stack_of = [&](int c, int p) { return c * np + p; };
  for (int c = 0; c < static_cast<int>(s1.size()); ++c)
    for (int p = 0; p < np; ++p) d.stack.push_back(s1[c] + set_name(push_sets[p]));

  // Pop phase: (forward set, backward set).
  std::map<std::pair<StateSet, int>, int> pop_id;
  std::deque<std::pair<StateSet, int>> work;
  auto pop_state = [&](const StateSet& s, int p) {
    auto key = std::make_pair(s, p);
    auto it = pop_id.find(key);
    if (it != pop_id.end()) return it->second;
    int id = d.add_state(meets(s, push_sets[p]), set_name(s) + "|" + set_name(push_sets[p]));
    check_budget(static_cast<std::size_t>(d.size()), budget, "LR states");
    pop_id.emplace(key, id);
    work.push_back(key);
    return id;
  };
  for (int p = 0; p < np; ++p) {
    for (int c = 0; c < static_cast<int>(s1.size()); ++c)
      d.add_push(p, c, push_id.at(image(bwd, push_sets[p], sym(s1[c], kPad))), stack_of(c, p));
    if (!init.empty()) d.add_int(p, 0, pop_state(init, p));
  }
  const int fin_id = 0;
  while (!work.empty()) {
    auto [s, p] = work.front();
    work.pop_front();
    int src = pop_id.at({s, p});
    for (int r = 0; r < static_cast<int>(s2.size()); ++r) {
      for (int c = 0; c < static_cast<int>(s1.size()); ++c)
        for (int p2 = 0; p2 < np; ++p2) {
          StateSet next = image(fwd, s, sym(s1[c], s2[r]));
          if (!next.empty()) d.add_pop(src, r, stack_of(c, p2), pop_state(next, p2));
        }
      StateSet next = image(fwd, s, sym(kPad, s2[r]));
      if (!next.empty()) d.add_pop(src, r, kBottom, pop_state(next, fin_id));
    }
  }
  if (!d.deterministic()) throw std::logic_error("build_LR_dvpa: result is not deterministic");
  return lr;
}

Word lr_word(const LrDvpa& lr, const std::vector<Letter>& u, const std::vector<Letter>& v) {
  Alphabet al = lr.dvpa.alphabet();
  Word w;
  for (auto it = u.rbegin(); it != u.rend(); ++it) w.push_back(al.at(*it));
  w.push_back(al.at(lr.separator));
  for (const auto& b : v) w.push_back(al.at(b));
  return w;
}

RecognizabilityVerdict is_recognizable(const SyncTransducer& t, const RegularityOptions& opt) {
  LrDvpa lr = build_LR_dvpa(disjointify(t));
  RecognizabilityVerdict v;
  v.lr_states = lr.dvpa.size();
  v.lr_stack = static_cast<int>(lr.dvpa.stack.size());
  v.regularity = is_regular(lr.dvpa, opt);
  v.holds = v.regularity.holds;
  v.detail = v.holds ? "reversed-prefix language is regular"
                     : "reversed-prefix language is not regular: " + v.regularity.detail;
  return v;
}

}  // namespace wordrel
