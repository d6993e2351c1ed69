#include "wordrel/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace wordrel {

ParseError::ParseError(int l, int c, const std::string& msg)
    : InputError("line " + std::to_string(l) + (c ? ", column " + std::to_string(c) : "") + ": " + msg),
      line(l),
      column(c) {}

namespace {

const std::string kHashWord = "HASH";

struct Tok {
  std::string s;
  int col;
};
struct Line {
  int no = 0;
  std::vector<Tok> toks;
};

std::vector<Line> lex(const std::string& text) {
  std::vector<Line> res;
  std::istringstream in(text);
  std::string raw;
  for (int no = 1; std::getline(in, raw); ++no) {
    Line l{no, {}};
    for (std::size_t i = 0; i < raw.size() && raw[i] != '#';) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != '#' && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      l.toks.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!l.toks.empty()) res.push_back(std::move(l));
  }
  return res;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
  return s;
}

std::string unescape(const std::string& s) { return replace_all(s, kHashWord, "#"); }

std::string escape(const Letter& l) {
  if (l.empty()) throw InputError("empty letter cannot be written");
  if (l.find(kHashWord) != std::string::npos) throw InputError("letter '" + l + "' contains the reserved word HASH");
  for (char c : l)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '|')
      throw InputError("letter '" + l + "' cannot be written");
  return replace_all(l, "#", kHashWord);
}

bool good_state_name(const std::string& s) {
  if (s.empty() || s == "->" || s == kEpsName) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ':' || c == '=' || c == '|') return false;
  return s.find(kHashWord) == std::string::npos;
}

// Canonical state names: the stored ones when usable, q<i> otherwise.
std::vector<std::string> state_names(const std::vector<std::string>& names, int n) {
  std::vector<std::string> r(n);
  std::set<std::string> seen;
  bool ok = static_cast<int>(names.size()) == n;
  for (int q = 0; ok && q < n; ++q) ok = good_state_name(names[q]) && seen.insert(names[q]).second;
  for (int q = 0; q < n; ++q) r[q] = ok ? names[q] : "q" + std::to_string(q);
  return r;
}

std::string join(const std::vector<std::string>& xs) {
  std::string r;
  for (const auto& x : xs) r += " " + x;
  return r;
}

std::vector<std::string> escaped(const std::vector<Letter>& ls) {
  std::vector<std::string> r;
  for (const auto& l : ls) r.push_back(escape(l));
  return r;
}

std::string symbol_text(const Symbol& s) {
  std::string r;
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "|" : "") + (s[i] == kPad ? kPad : escape(s[i]));
  return r;
}

const std::set<std::string>& directives_of(const std::string& kind) {
  static const std::map<std::string, std::set<std::string>> table{
      {"nfa", {"states", "initial", "accepting"}},
      {"dfa", {"states", "initial", "accepting"}},
      {"sync", {"states", "initial", "accepting"}},
      {"det", {"states", "initial", "accepting", "partition", "endmarker"}},
      {"det-buchi", {"states", "initial", "accepting", "partition", "endmarker"}},
      {"parity", {"states", "initial", "priorities"}},
      {"dvpa", {"states", "initial", "accepting", "calls", "returns", "internals", "stack"}},
  };
  auto it = table.find(kind);
  static const std::set<std::string> none;
  return it == table.end() ? none : it->second;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lines_(lex(text)) {}

  MachineFile run() {
    if (lines_.empty()) throw ParseError(1, 0, "empty file; expected 'machine <kind> <name>'");
    header_ = &lines_[0];
    const auto& h = header_->toks;
    if (h[0].s != "machine") fail(*header_, 0, "expected 'machine <kind> <name>'");
    if (h.size() != 3) fail(*header_, h.size() < 3 ? 0 : 3, "expected 'machine <kind> <name>'");
    file_.kind = h[1].s;
    file_.name = h[2].s;
    const auto& allowed = directives_of(file_.kind);
    if (allowed.empty()) fail(*header_, 1, "unknown machine kind '" + file_.kind + "'");
    for (std::size_t i = 1; i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      const std::string& first = l.toks[0].s;
      if (first.back() != ':') {
        moves_.push_back(&l);
        continue;
      }
      std::string d = first.substr(0, first.size() - 1);
      bool alpha = d == "alphabet" || (d.rfind("alphabet", 0) == 0 && d.size() > 8 &&
                                       d.find_first_not_of("0123456789", 8) == std::string::npos);
      if (!alpha && !allowed.count(d)) fail(l, 0, "unknown directive '" + first + "' for kind " + file_.kind);
      if (alpha && file_.kind == "dvpa") fail(l, 0, "dvpa files declare calls:, returns: and internals:");
      if (!dirs_.emplace(d, &l).second) fail(l, 0, "duplicate directive '" + first + "'");
    }
    parse_states();
    if (file_.kind == "nfa" || file_.kind == "dfa") file_.machine = parse_nfa(file_.kind == "dfa");
    else if (file_.kind == "sync") file_.machine = parse_sync();
    else if (file_.kind == "det") file_.machine = parse_det();
    else if (file_.kind == "det-buchi") {
      DetBuchiTransducer b;
      static_cast<DetTransducer&>(b) = parse_det();
      file_.machine = std::move(b);
    } else if (file_.kind == "parity") file_.machine = parse_parity();
    else file_.machine = parse_dvpa();
    return std::move(file_);
  }

 private:
  [[noreturn]] void fail(const Line& l, int tok, const std::string& msg) const {
    int col = tok < static_cast<int>(l.toks.size()) && tok >= 0 ? l.toks[tok].col : 0;
    if (tok == 0 && l.toks.size() > 0) col = l.toks[0].col;
    throw ParseError(l.no, col, msg);
  }

  const Line* dir(const std::string& d, bool required) const {
    auto it = dirs_.find(d);
    if (it != dirs_.end()) return it->second;
    if (required) fail(*header_, 0, "missing directive '" + d + ":'");
    return nullptr;
  }

  std::vector<Letter> letters(const Line* l, const std::set<Letter>& reserved = {}) const {
    std::vector<Letter> r;
    if (!l) return r;
    std::set<Letter> seen;
    for (std::size_t i = 1; i < l->toks.size(); ++i) {
      Letter x = unescape(l->toks[i].s);
      if (x == kEpsName || x == "->" || x == kPad || reserved.count(x) || x.find('|') != std::string::npos)
        fail(*l, static_cast<int>(i), "reserved letter '" + l->toks[i].s + "'");
      if (!seen.insert(x).second) fail(*l, static_cast<int>(i), "duplicate letter '" + l->toks[i].s + "'");
      r.push_back(x);
    }
    return r;
  }

  Tapes tapes() const {
    Tapes t;
    if (const Line* one = dir("alphabet", false)) {
      if (dirs_.count("alphabet1")) fail(*one, 0, "mixes 'alphabet:' and 'alphabet1:'");
      t.push_back(letters(one));
    }
    for (int i = 1; dirs_.count("alphabet" + std::to_string(i)); ++i)
      t.push_back(letters(dir("alphabet" + std::to_string(i), true)));
    int declared = 0;
    for (const auto& [d, l] : dirs_) declared += d.rfind("alphabet", 0) == 0;
    if (t.empty()) fail(*header_, 0, "missing alphabet declaration");
    if (declared != static_cast<int>(t.size()))
      fail(*header_, 0, "alphabet declarations must be numbered 1..k without gaps");
    return t;
  }

  void parse_states() {
    const Line* l = dir("states", true);
    for (std::size_t i = 1; i < l->toks.size(); ++i) {
      const std::string& s = l->toks[i].s;
      if (!good_state_name(s)) fail(*l, static_cast<int>(i), "invalid state name '" + s + "'");
      if (!ids_.emplace(s, static_cast<int>(names_.size())).second)
        fail(*l, static_cast<int>(i), "duplicate state '" + s + "'");
      names_.push_back(s);
    }
    if (names_.empty()) fail(*l, 0, "no states declared");
  }

  int state(const Line& l, int tok) const {
    if (tok >= static_cast<int>(l.toks.size())) fail(l, 0, "missing state");
    auto it = ids_.find(l.toks[tok].s);
    if (it == ids_.end()) fail(l, tok, "unknown state '" + l.toks[tok].s + "'");
    return it->second;
  }

  std::vector<int> state_list(const char* d, bool required) const {
    std::vector<int> r;
    const Line* l = dir(d, required);
    if (!l) return r;
    std::set<int> seen;
    for (std::size_t i = 1; i < l->toks.size(); ++i) {
      int q = state(*l, static_cast<int>(i));
      if (!seen.insert(q).second) fail(*l, static_cast<int>(i), "state listed twice");
      r.push_back(q);
    }
    return r;
  }

  int single_initial() const {
    const Line* l = dir("initial", true);
    if (l->toks.size() != 2) fail(*l, 0, "exactly one initial state expected");
    return state(*l, 1);
  }

  std::vector<char> accepting_flags() const {
    std::vector<char> acc(names_.size(), 0);
    for (int q : state_list("accepting", false)) acc[q] = 1;
    return acc;
  }

  // `q X -> p` lines; returns the symbol token index 1.
  void expect_arrow(const Line& l, std::size_t n) const {
    if (l.toks.size() != n || l.toks[n - 2].s != "->")
      fail(l, 0, "malformed transition; expected " + std::to_string(n) + " tokens with '->'");
  }

  Symbol symbol(const Line& l, int tok, int arity, bool pads) const {
    Symbol s;
    const std::string& t = l.toks[tok].s;
    std::size_t b = 0;
    for (;;) {
      std::size_t e = t.find('|', b);
      std::string part = t.substr(b, e == std::string::npos ? std::string::npos : e - b);
      if (part.empty()) fail(l, tok, "empty component in '" + t + "'");
      if (part == kPad && !pads) fail(l, tok, "padding is only allowed in sync files");
      s.push_back(part == kPad ? kPad : unescape(part));
      if (e == std::string::npos) break;
      b = e + 1;
    }
    if (static_cast<int>(s.size()) != arity)
      fail(l, tok, "symbol '" + t + "' has " + std::to_string(s.size()) + " components, expected " +
                       std::to_string(arity));
    return s;
  }

  int symbol_id(const Line& l, int tok, const Alphabet& al, int arity, bool pads) const {
    Symbol s = symbol(l, tok, arity, pads);
    int id = al.index(s);
    if (id < 0) {
      bool all_pad = pads && std::all_of(s.begin(), s.end(), [](const Letter& x) { return x == kPad; });
      fail(l, tok, all_pad ? "the all-pad symbol is not a letter" : "unknown symbol '" + l.toks[tok].s + "'");
    }
    return id;
  }

  Alphabet tuple_alphabet(const Tapes& t) const {
    return t.size() == 1 ? Alphabet::atomic(t[0]) : Alphabet::product(t);
  }

  void fill_nfa(Nfa& a, int arity, bool pads, bool dfa_rules) const {
    for (std::size_t q = 0; q < names_.size(); ++q) a.add_state(false, names_[q]);
    a.accepting = accepting_flags();
    if (dfa_rules) a.add_initial(single_initial());
    else
      for (int q : state_list("initial", true)) a.add_initial(q);
    std::set<std::pair<int, int>> used;
    for (const Line* l : moves_) {
      expect_arrow(*l, 4);
      int p = state(*l, 0), q = state(*l, 3);
      int s = l->toks[1].s == kEpsName ? kEpsilon : symbol_id(*l, 1, a.alphabet, arity, pads);
      if (dfa_rules && s == kEpsilon) fail(*l, 1, "dfa files have no eps moves");
      if (dfa_rules && !used.insert({p, s}).second) fail(*l, 1, "nondeterministic transition");
      a.add_edge(p, s, q);
    }
  }

  Machine parse_nfa(bool dfa) const {
    Tapes t = tapes();
    Nfa a(tuple_alphabet(t));
    fill_nfa(a, static_cast<int>(t.size()), false, dfa);
    if (!dfa) return a;
    Dfa d;
    d.alphabet = a.alphabet;
    d.num_states = a.size();
    d.initial = a.initial[0];
    d.accepting = a.accepting;
    d.delta.assign(static_cast<std::size_t>(d.num_states) * d.alphabet.size(), -1);
    for (int p = 0; p < a.size(); ++p)
      for (const auto& e : a.out[p]) d.delta[static_cast<std::size_t>(p) * d.alphabet.size() + e.sym] = e.to;
    for (int p = 0; p < a.size(); ++p)
      for (int s = 0; s < d.alphabet.size(); ++s)
        if (d.next(p, s) < 0)
          fail(*dir("states", true), 0,
               "dfa is incomplete: state " + names_[p] + " has no move on " + symbol_text(d.alphabet.symbol(s)));
    return d;
  }

  Machine parse_sync() const {
    Tapes t = tapes();
    SyncTransducer s(t);
    fill_nfa(s.nfa, static_cast<int>(t.size()), true, false);
    if (auto v = padding_violation(s)) fail(*header_, 0, "padding discipline violated: " + *v);
    return s;
  }

  DetTransducer parse_det() const {
    DetTransducer d;
    d.tapes = tapes();
    if (const Line* l = dir("endmarker", false)) {
      if (l->toks.size() != 2) fail(*l, 0, "exactly one endmarker expected");
      d.endmarker = unescape(l->toks[1].s);
    }
    for (std::size_t t = 0; t < d.tapes.size(); ++t)
      if (std::find(d.tapes[t].begin(), d.tapes[t].end(), d.endmarker) != d.tapes[t].end()) {
        const Line* l = dir(d.tapes.size() == 1 ? "alphabet" : "alphabet" + std::to_string(t + 1), false);
        fail(l ? *l : *header_, 0, "the endmarker occurs in a tape alphabet");
      }
    std::vector<int> tape(names_.size(), -1);
    const Line* part = dir("partition", true);
    for (std::size_t i = 1; i < part->toks.size(); ++i) {
      const std::string& x = part->toks[i].s;
      auto colon = x.rfind(':');
      if (colon == std::string::npos) fail(*part, static_cast<int>(i), "expected state:tape");
      auto it = ids_.find(x.substr(0, colon));
      if (it == ids_.end()) fail(*part, static_cast<int>(i), "unknown state '" + x.substr(0, colon) + "'");
      int j = 0;
      try {
        std::size_t used = 0;
        j = std::stoi(x.substr(colon + 1), &used);
        if (used != x.size() - colon - 1) j = 0;
      } catch (const std::exception&) {
        j = 0;
      }
      if (j < 1 || j > static_cast<int>(d.tapes.size())) fail(*part, static_cast<int>(i), "tape index out of range");
      if (tape[it->second] >= 0) fail(*part, static_cast<int>(i), "state assigned twice");
      tape[it->second] = j - 1;
    }
    for (std::size_t q = 0; q < names_.size(); ++q)
      if (tape[q] < 0) fail(*part, 0, "state " + names_[q] + " has no tape");
    std::vector<char> acc = accepting_flags();
    for (std::size_t q = 0; q < names_.size(); ++q) d.add_state(tape[q], acc[q], names_[q]);
    d.initial = single_initial();
    for (const Line* l : moves_) {
      expect_arrow(*l, 4);
      int p = state(*l, 0), q = state(*l, 3);
      const std::string& x = l->toks[1].s;
      if (x == kEpsName) {
        if (d.eps[p] >= 0) fail(*l, 1, "nondeterministic eps move");
        if (!d.delta[p].empty()) fail(*l, 1, "state " + names_[p] + " mixes eps and letter moves");
        d.add_eps(p, q);
        continue;
      }
      Letter a = unescape(x);
      const auto& sigma = d.tapes[d.tape[p]];
      if (a != d.endmarker && std::find(sigma.begin(), sigma.end(), a) == sigma.end())
        fail(*l, 1, "letter '" + x + "' is not on tape " + std::to_string(d.tape[p] + 1) + " of state " + names_[p]);
      if (d.eps[p] >= 0) fail(*l, 1, "state " + names_[p] + " mixes eps and letter moves");
      if (d.delta[p].count(a)) fail(*l, 1, "nondeterministic transition");
      d.add(p, a, q);
    }
    return d;
  }

  Machine parse_parity() const {
    Tapes t = tapes();
    ParityTransducer p(tuple_alphabet(t));
    std::vector<int> prio(names_.size(), -1);
    const Line* l = dir("priorities", true);
    for (std::size_t i = 1; i < l->toks.size(); ++i) {
      const std::string& x = l->toks[i].s;
      auto eq = x.rfind('=');
      if (eq == std::string::npos) fail(*l, static_cast<int>(i), "expected state=priority");
      auto it = ids_.find(x.substr(0, eq));
      if (it == ids_.end()) fail(*l, static_cast<int>(i), "unknown state '" + x.substr(0, eq) + "'");
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(x.substr(eq + 1), &used);
        if (used != x.size() - eq - 1) v = -1;
      } catch (const std::exception&) {
        v = -1;
      }
      if (v < 0) fail(*l, static_cast<int>(i), "priority must be a non-negative integer");
      if (prio[it->second] >= 0) fail(*l, static_cast<int>(i), "priority assigned twice");
      prio[it->second] = v;
    }
    for (std::size_t q = 0; q < names_.size(); ++q) {
      if (prio[q] < 0) fail(*l, 0, "state " + names_[q] + " has no priority");
      p.add_state(prio[q], names_[q]);
    }
    p.initial = single_initial();
    for (const Line* m : moves_) {
      expect_arrow(*m, 4);
      int a = state(*m, 0), b = state(*m, 3);
      if (m->toks[1].s == kEpsName) fail(*m, 1, "parity files have no eps moves");
      int s = symbol_id(*m, 1, p.alphabet, static_cast<int>(t.size()), false);
      if (p.next(a, s) >= 0) fail(*m, 1, "nondeterministic transition");
      p.set(a, s, b);
    }
    return p;
  }

  Machine parse_dvpa() const {
    Dvpa d;
    const std::set<Letter> bot{kBottomName};
    d.calls = letters(dir("calls", false), bot);
    d.returns = letters(dir("returns", false), bot);
    d.internals = letters(dir("internals", false), bot);
    d.stack = letters(dir("stack", false), bot);
    std::map<Letter, std::string> part;
    for (const char* name : {"calls", "returns", "internals"}) {
      const Line* l = dir(name, false);
      if (!l) continue;
      for (std::size_t i = 1; i < l->toks.size(); ++i) {
        auto [it, fresh] = part.emplace(unescape(l->toks[i].s), name);
        if (!fresh) fail(*l, static_cast<int>(i), "letter '" + l->toks[i].s + "' is also in " + it->second);
      }
    }
    auto index_in = [&](const std::vector<Letter>& v, const Line& l, int tok, const char* what) {
      auto it = std::find(v.begin(), v.end(), unescape(l.toks[tok].s));
      if (it == v.end()) fail(l, tok, "'" + l.toks[tok].s + "' is not a " + what);
      return static_cast<int>(it - v.begin());
    };
    std::vector<char> acc = accepting_flags();
    for (std::size_t q = 0; q < names_.size(); ++q) d.add_state(acc[q], names_[q]);
    d.initial = single_initial();
    std::set<std::pair<int, int>> push_used, int_used;
    std::set<std::tuple<int, int, int>> pop_used;
    for (const Line* l : moves_) {
      if (l->toks.size() < 2) fail(*l, 0, "malformed transition");
      int p = state(*l, 0);
      const std::string& op = l->toks[1].s;
      if (op == "push") {
        if (l->toks.size() != 6 || l->toks[3].s != "->") fail(*l, 0, "expected 'q push c -> p g'");
        int c = index_in(d.calls, *l, 2, "call letter");
        int q = state(*l, 4);
        int g = index_in(d.stack, *l, 5, "stack symbol");
        if (!push_used.insert({p, c}).second) fail(*l, 2, "nondeterministic push");
        d.add_push(p, c, q, g);
      } else if (op == "pop") {
        if (l->toks.size() != 6 || l->toks[4].s != "->") fail(*l, 0, "expected 'q pop r g -> p'");
        int r = index_in(d.returns, *l, 2, "return letter");
        int g = l->toks[3].s == kBottomName ? kBottom : index_in(d.stack, *l, 3, "stack symbol");
        int q = state(*l, 5);
        if (!pop_used.insert({p, r, g}).second) fail(*l, 2, "nondeterministic pop");
        d.add_pop(p, r, g, q);
      } else if (op == "int") {
        expect_arrow(*l, 5);
        int a = index_in(d.internals, *l, 2, "internal letter");
        int q = state(*l, 4);
        if (!int_used.insert({p, a}).second) fail(*l, 2, "nondeterministic internal move");
        d.add_int(p, a, q);
      } else {
        fail(*l, 1, "expected push, pop or int");
      }
    }
    return d;
  }

  std::vector<Line> lines_;
  const Line* header_ = nullptr;
  std::map<std::string, const Line*> dirs_;
  std::vector<const Line*> moves_;
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
  MachineFile file_;
};

struct Writer {
  std::ostringstream out;
  std::vector<std::string> names;

  void states(const std::vector<std::string>& raw, int n) {
    names = state_names(raw, n);
    out << "states:" << join(names) << "\n";
  }
  void list(const char* d, const std::vector<int>& qs) {
    out << d << ":";
    for (int q : qs) out << " " << names[q];
    out << "\n";
  }
  void flags(const char* d, const std::vector<char>& f) {
    std::vector<int> qs;
    for (std::size_t q = 0; q < f.size(); ++q)
      if (f[q]) qs.push_back(static_cast<int>(q));
    list(d, qs);
  }
  void tapes(const Tapes& t) {
    if (t.size() == 1) out << "alphabet:" << join(escaped(t[0])) << "\n";
    else
      for (std::size_t i = 0; i < t.size(); ++i) out << "alphabet" << i + 1 << ":" << join(escaped(t[i])) << "\n";
  }
  void move(int p, const std::string& label, int q) { out << names[p] << " " << label << " -> " << names[q] << "\n"; }
};

Tapes tapes_of(const Alphabet& a) {
  if (a.empty()) throw InputError("cannot write a machine over an empty alphabet");
  Tapes t = a.components();
  if (Alphabet(t.size() == 1 ? Alphabet::atomic(t[0]) : Alphabet::product(t)) != a)
    throw InputError("only full product alphabets can be written");
  return t;
}

void write_nfa(Writer& w, const Nfa& a, const Tapes& t) {
  w.tapes(t);
  w.states(a.names, a.size());
  w.list("initial", a.initial);
  w.flags("accepting", a.accepting);
  for (int p = 0; p < a.size(); ++p)
    for (const auto& e : a.out[p]) w.move(p, e.sym == kEpsilon ? kEpsName : symbol_text(a.alphabet.symbol(e.sym)), e.to);
}

void write_det(Writer& w, const DetTransducer& d) {
  d.validate();
  w.tapes(d.tapes);
  w.states(d.names, d.size());
  w.list("initial", {d.initial});
  w.flags("accepting", d.accepting);
  w.out << "partition:";
  for (int q = 0; q < d.size(); ++q) w.out << " " << w.names[q] << ":" << d.tape[q] + 1;
  w.out << "\n";
  if (d.endmarker != "#") w.out << "endmarker: " << escape(d.endmarker) << "\n";
  for (int p = 0; p < d.size(); ++p) {
    if (d.eps[p] >= 0) w.move(p, kEpsName, d.eps[p]);
    for (const auto& [a, q] : d.delta[p]) w.move(p, escape(a), q);
  }
}

}  // namespace

MachineFile parse_machine(const std::string& text) { return Parser(text).run(); }

std::string kind_of(const Machine& m) {
  static const char* kinds[] = {"nfa", "dfa", "sync", "det", "det-buchi", "parity", "dvpa"};
  return kinds[m.index()];
}

MachineFile machine_file(Machine m, std::string name) {
  std::string k = kind_of(m);
  return {k, std::move(name), std::move(m)};
}

std::string serialize(const MachineFile& f) {
  Writer w;
  std::string name = f.name.empty() ? "unnamed" : f.name;
  for (char& c : name)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') c = '_';
  w.out << "machine " << kind_of(f.machine) << " " << name << "\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Nfa>) {
          write_nfa(w, m, tapes_of(m.alphabet));
        } else if constexpr (std::is_same_v<T, Dfa>) {
          w.tapes(tapes_of(m.alphabet));
          w.states({}, m.num_states);
          w.list("initial", {m.initial});
          w.flags("accepting", m.accepting);
          for (int p = 0; p < m.num_states; ++p)
            for (int s = 0; s < m.alphabet.size(); ++s) w.move(p, symbol_text(m.alphabet.symbol(s)), m.next(p, s));
        } else if constexpr (std::is_same_v<T, SyncTransducer>) {
          write_nfa(w, m.nfa, m.tapes);
        } else if constexpr (std::is_same_v<T, DetTransducer> || std::is_same_v<T, DetBuchiTransducer>) {
          write_det(w, m);
        } else if constexpr (std::is_same_v<T, ParityTransducer>) {
          w.tapes(tapes_of(m.alphabet));
          w.states(m.names, m.size());
          w.list("initial", {m.initial});
          w.out << "priorities:";
          for (int q = 0; q < m.size(); ++q) w.out << " " << w.names[q] << "=" << m.priority[q];
          w.out << "\n";
          for (int p = 0; p < m.size(); ++p)
            for (int s = 0; s < m.alphabet.size(); ++s)
              if (m.next(p, s) >= 0) w.move(p, symbol_text(m.alphabet.symbol(s)), m.next(p, s));
        } else {
          m.validate();
          for (const auto& g : m.stack)
            if (g == kBottomName) throw InputError("stack symbol BOT is reserved");
          w.out << "calls:" << join(escaped(m.calls)) << "\n";
          w.out << "returns:" << join(escaped(m.returns)) << "\n";
          w.out << "internals:" << join(escaped(m.internals)) << "\n";
          w.out << "stack:" << join(escaped(m.stack)) << "\n";
          w.states(m.names, m.size());
          w.list("initial", {m.initial});
          w.flags("accepting", m.accepting);
          for (int p = 0; p < m.size(); ++p) {
            for (const auto& t : m.pushes)
              if (t.from == p)
                w.out << w.names[p] << " push " << escape(m.calls[t.call]) << " -> " << w.names[t.to] << " "
                      << escape(m.stack[t.gamma]) << "\n";
            for (const auto& t : m.pops)
              if (t.from == p)
                w.out << w.names[p] << " pop " << escape(m.returns[t.ret]) << " "
                      << (t.gamma == kBottom ? kBottomName : escape(m.stack[t.gamma])) << " -> " << w.names[t.to]
                      << "\n";
            for (const auto& t : m.ints)
              if (t.from == p)
                w.out << w.names[p] << " int " << escape(m.internals[t.sym]) << " -> " << w.names[t.to] << "\n";
          }
        }
      },
      f.machine);
  return w.out.str();
}

MachineFile read_machine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  try {
    return parse_machine(s.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line, e.column, path + ": " + std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

void write_machine_file(const std::string& path, const MachineFile& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << serialize(m);
}

}  // namespace wordrel
