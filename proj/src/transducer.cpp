#include "wordrel/transducer.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace wordrel {

Alphabet padded_alphabet(const Tapes& tapes) {
  Tapes comps;
  for (const auto& t : tapes) {
    auto c = t;
    c.push_back(kPad);
    comps.push_back(c);
  }
  std::vector<Symbol> syms;
  Alphabet full = Alphabet::product(comps);
  for (const auto& s : full.symbols())
    if (!std::all_of(s.begin(), s.end(), [](const Letter& l) { return l == kPad; }))
      syms.push_back(s);
  return Alphabet(std::move(syms));
}

namespace {

unsigned pad_mask(const Symbol& s) {
  unsigned m = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == kPad) m |= 1u << i;
  return m;
}

}  // namespace

Nfa well_padded(const Tapes& tapes) {
  Alphabet a = padded_alphabet(tapes);
  const unsigned k = static_cast<unsigned>(tapes.size());
  Nfa n(a);
  for (unsigned m = 0; m < (1u << k); ++m) n.add_state(true);
  n.add_initial(0);
  for (unsigned m = 0; m < (1u << k); ++m)
    for (int s = 0; s < a.size(); ++s) {
      unsigned pm = pad_mask(a.symbol(s));
      if ((pm & m) == m) n.add_edge(static_cast<int>(m), s, static_cast<int>(pm));
    }
  return n;
}

SyncTransducer::SyncTransducer(Tapes t) : tapes(std::move(t)), nfa(padded_alphabet(tapes)) {}

std::optional<std::string> padding_violation(const SyncTransducer& t) {
  const Nfa& n = t.nfa;
  std::set<std::pair<int, unsigned>> seen;
  std::deque<std::pair<int, unsigned>> work;
  for (int q : n.initial)
    if (seen.insert({q, 0}).second) work.push_back({q, 0});
  while (!work.empty()) {
    auto [q, m] = work.front();
    work.pop_front();
    for (const auto& e : n.out[q]) {
      unsigned nm = m;
      if (e.sym != kEpsilon) {
        unsigned pm = pad_mask(n.alphabet.symbol(e.sym));
        if ((pm & m) != m)
          return "letter after pad on edge " + n.state_name(q) + " " + n.alphabet.name(e.sym) +
                 " -> " + n.state_name(e.to);
        nm = pm;
      }
      if (seen.insert({e.to, nm}).second) work.push_back({e.to, nm});
    }
  }
  return std::nullopt;
}

Word pad_encode(const Alphabet& padded, const WordTuple& u) {
  if (static_cast<int>(u.size()) != padded.arity()) throw InputError("arity mismatch");
  std::size_t len = 0;
  for (const auto& c : u) len = std::max(len, c.size());
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    Symbol s;
    for (const auto& c : u) s.push_back(i < c.size() ? c[i] : kPad);
    w.push_back(padded.at(s));
  }
  return w;
}

std::optional<WordTuple> pad_decode(const Alphabet& padded, const Word& w) {
  const int k = padded.arity();
  WordTuple u(k);
  unsigned m = 0;
  for (int s : w) {
    unsigned pm = pad_mask(padded.symbol(s));
    if ((pm & m) != m) return std::nullopt;
    m = pm;
    for (int j = 0; j < k; ++j)
      if (!(pm >> j & 1)) u[j].push_back(padded.symbol(s)[j]);
  }
  return u;
}

bool sync_accepts(const SyncTransducer& t, const WordTuple& u) {
  if (static_cast<int>(u.size()) != t.arity()) throw InputError("sync_accepts: arity mismatch");
  for (int j = 0; j < t.arity(); ++j)
    for (const auto& l : u[j])
      if (std::find(t.tapes[j].begin(), t.tapes[j].end(), l) == t.tapes[j].end())
        throw InputError("sync_accepts: letter '" + l + "' not in tape alphabet");
  return accepts(t.nfa, pad_encode(t.nfa.alphabet, u));
}

Nfa sync_as_nfa(const SyncTransducer& t) { return intersect(t.nfa, well_padded(t.tapes)); }

SyncTransducer sync_of_nfa(const Tapes& tapes, Nfa n) {
  SyncTransducer t(tapes);
  if (n.alphabet != t.nfa.alphabet) throw InputError("sync_of_nfa: alphabet mismatch");
  t.nfa = std::move(n);
  return t;
}

SyncTransducer sync_intersect(const SyncTransducer& a, const SyncTransducer& b) {
  if (a.tapes != b.tapes) throw InputError("sync_intersect: tape mismatch");
  return sync_of_nfa(a.tapes, intersect(a.nfa, b.nfa));
}

SyncTransducer sync_complement(const SyncTransducer& t, std::size_t budget) {
  Nfa c = complement_nfa(eliminate_epsilon(t.nfa), budget);
  return sync_of_nfa(t.tapes, trim(intersect(c, well_padded(t.tapes))));
}

int DetTransducer::add_state(int tape_index, bool acc, std::string name) {
  if (tape_index < 0 || tape_index >= arity()) throw InputError("tape index out of range");
  tape.push_back(tape_index);
  accepting.push_back(acc);
  delta.emplace_back();
  eps.push_back(-1);
  names.push_back(name.empty() ? "q" + std::to_string(size() - 1) : std::move(name));
  return size() - 1;
}

int DetTransducer::find(const std::string& name) const {
  for (int q = 0; q < size(); ++q)
    if (names[q] == name) return q;
  return -1;
}

void DetTransducer::add(int p, const Letter& a, int q) {
  if (p < 0 || p >= size() || q < 0 || q >= size()) throw InputError("state out of range");
  const auto& sig = tapes[tape[p]];
  if (a != endmarker && std::find(sig.begin(), sig.end(), a) == sig.end())
    throw InputError("letter '" + a + "' not in alphabet of tape " + std::to_string(tape[p] + 1));
  if (eps[p] >= 0) throw InputError("state " + names[p] + " mixes eps and letter moves");
  if (!delta[p].emplace(a, q).second)
    throw InputError("nondeterministic transition at " + names[p] + " on " + a);
}

void DetTransducer::add_eps(int p, int q) {
  if (p < 0 || p >= size() || q < 0 || q >= size()) throw InputError("state out of range");
  if (!delta[p].empty()) throw InputError("state " + names[p] + " mixes eps and letter moves");
  if (eps[p] >= 0) throw InputError("nondeterministic eps move at " + names[p]);
  eps[p] = q;
}

void DetTransducer::validate() const {
  for (const auto& t : tapes)
    if (std::find(t.begin(), t.end(), endmarker) != t.end())
      throw InputError("endmarker occurs in a tape alphabet");
  if (initial < 0 || initial >= size()) throw InputError("initial state out of range");
  for (int q = 0; q < size(); ++q)
    if (eps[q] >= 0 && !delta[q].empty())
      throw InputError("state " + names[q] + " mixes eps and letter moves");
}

bool det_accepts(const DetTransducer& t, const WordTuple& u) {
  if (static_cast<int>(u.size()) != t.arity()) throw InputError("det_accepts: arity mismatch");
  std::vector<std::size_t> pos(t.arity(), 0);
  int q = t.initial;
  int eps_run = 0;
  auto finished = [&] {
    for (int j = 0; j < t.arity(); ++j)
      if (pos[j] <= u[j].size()) return false;
    return true;
  };
  while (!finished()) {
    if (t.eps[q] >= 0) {
      if (++eps_run > t.size()) return false;  // pure ε cycle
      q = t.eps[q];
      continue;
    }
    eps_run = 0;
    int j = t.tape[q];
    if (pos[j] > u[j].size()) return false;  // tape already closed
    const Letter& a = pos[j] < u[j].size() ? u[j][pos[j]] : t.endmarker;
    auto it = t.delta[q].find(a);
    if (it == t.delta[q].end()) return false;
    ++pos[j];
    q = it->second;
  }
  return t.accepting[q] != 0;
}

}  // namespace wordrel
