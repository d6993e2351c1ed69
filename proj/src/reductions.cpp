#include "wordrel/reductions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wordrel {

namespace {

int full_mask(int k) { return (1 << k) - 1; }

int first_open(int mask, int k) {
  for (int j = 0; j < k; ++j)
    if (!(mask >> j & 1)) return j;
  return -1;
}

}  // namespace

NormalForm normalize(const DetTransducer& a) {
  a.validate();
  const int k = a.arity();
  if (k < 1 || k > 16) throw InputError("normalize: arity must lie in 1..16");
  NormalForm nf;
  DetTransducer& t = nf.t;
  t.tapes = a.tapes;
  t.endmarker = a.endmarker;
  const int init = t.add_state(a.size() ? a.tape[a.initial] : 0, false, "init");
  t.initial = init;
  nf.accept = t.add_state(0, true, "q_a");
  nf.reject = t.add_state(0, false, "q_r");

  // Nodes are (letter-reading state, closed tapes) or drains (-1 - mask).
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> nodes;
  auto resolve = [&](int q, int mask) {
    // Follows ε moves; a cycle or a closed tape leads to the drain.
    for (int steps = 0; a.eps[q] >= 0; ++steps) {
      if (steps > a.size()) return std::make_pair(-1, mask);
      q = a.eps[q];
    }
    if (mask >> a.tape[q] & 1) return std::make_pair(-1, mask);
    return std::make_pair(q, mask);
  };
  auto node = [&](std::pair<int, int> key) {
    auto [it, fresh] = ids.emplace(key, t.size());
    if (fresh) {
      auto [q, mask] = key;
      std::string name = q >= 0 ? a.names[q] : "drain";
      name += "/" + std::to_string(mask);
      t.add_state(q >= 0 ? a.tape[q] : first_open(mask, k), false, name);
      nodes.push_back(key);
    }
    return it->second;
  };
  const auto start = resolve(a.initial, 0);
  node(start);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [q, mask] = nodes[i];
    const int src = static_cast<int>(i) + 3;
    const int j = q >= 0 ? a.tape[q] : first_open(mask, k);
    const int closed = mask | (1 << j);
    auto target = [&](int to) {
      if (closed == full_mask(k)) return to >= 0 && a.accepting[to] ? nf.accept : nf.reject;
      return node(to >= 0 ? resolve(to, closed) : std::make_pair(-1, closed));
    };
    for (const auto& x : a.tapes[j]) {
      auto it = q >= 0 ? a.delta[q].find(x) : a.delta[0].end();
      bool defined = q >= 0 && it != a.delta[q].end();
      t.add(src, x, defined ? node(resolve(it->second, mask)) : node({-1, mask}));
    }
    auto it = q >= 0 ? a.delta[q].find(a.endmarker) : a.delta[0].end();
    bool defined = q >= 0 && it != a.delta[q].end();
    t.add(src, a.endmarker, target(defined ? it->second : -1));
  }
  // The fresh initial state repeats the moves of the start node.
  const int s = ids.at(start);
  t.tape[init] = t.tape[s];
  t.delta[init] = t.delta[s];
  return nf;
}

GadgetPair build_gadget(const NormalForm& r, const NormalForm& s) {
  if (r.t.tapes != s.t.tapes || r.t.endmarker != s.t.endmarker)
    throw InputError("build_gadget: the machines use different alphabets");
  GadgetPair g;
  DetBuchiTransducer b;
  b.tapes = r.t.tapes;
  b.endmarker = r.t.endmarker;
  g.offset = r.t.size();
  for (const auto* m : {&r.t, &s.t}) {
    const int off = m == &r.t ? 0 : g.offset;
    const std::string tag = m == &r.t ? "R." : "S.";
    for (int q = 0; q < m->size(); ++q) b.add_state(m->tape[q], false, tag + m->names[q]);
    for (int q = 0; q < m->size(); ++q) {
      for (const auto& [x, to] : m->delta[q]) b.add(q + off, x, to + off);
      if (m->eps[q] >= 0) b.add_eps(q + off, m->eps[q] + off);
    }
  }
  g.qa_r = r.accept;
  g.qr_r = r.reject;
  g.qa_s = s.accept + g.offset;
  g.qr_s = s.reject + g.offset;
  const int r0 = r.t.initial, s0 = s.t.initial + g.offset;
  // After a verdict the machine restarts on R or S.
  auto copy = [&](int to, int from) {
    b.tape[to] = b.tape[from];
    b.delta[to] = b.delta[from];
    b.eps[to] = b.eps[from];
  };
  copy(g.qa_r, r0);
  copy(g.qr_s, r0);
  copy(g.qr_r, s0);
  copy(g.qa_s, s0);
  for (int q : {g.qa_r, g.qr_r, g.qr_s}) b.accepting[q] = 1;
  g.br = b;
  g.bs = b;
  g.br.initial = r0;
  g.bs.initial = s0;
  return g;
}

GadgetPair build_gadget(const DetTransducer& r, const DetTransducer& s) {
  return build_gadget(normalize(r), normalize(s));
}

LetterLasso parse_letter_lasso(const std::string& text) {
  std::string body = text;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "^w") == 0) body.resize(body.size() - 2);
  std::vector<std::string> tokens;
  if (body.find(' ') != std::string::npos) {
    std::istringstream in(body);
    for (std::string x; in >> x;) {
      // Parentheses may be glued to letters.
      std::size_t b = 0, e = x.size();
      if (b < e && x[b] == '(') tokens.push_back("("), ++b;
      bool close = b < e && x[e - 1] == ')';
      if (close) --e;
      if (b < e) tokens.push_back(x.substr(b, e - b));
      if (close) tokens.push_back(")");
    }
  } else {
    for (char c : body) tokens.emplace_back(1, c);
  }
  LetterLasso l;
  int part = 0;
  for (const auto& x : tokens) {
    if (x == "(") {
      if (part != 0) throw InputError("lasso '" + text + "': unexpected '('");
      part = 1;
    } else if (x == ")") {
      if (part != 1) throw InputError("lasso '" + text + "': unexpected ')'");
      part = 2;
    } else {
      if (part == 2) throw InputError("lasso '" + text + "': letters after the period");
      (part ? l.v : l.u).push_back(x);
    }
  }
  if (part != 2) throw InputError("lasso '" + text + "': expected u(v)");
  if (l.v.empty()) throw InputError("lasso '" + text + "': empty period");
  return l;
}

bool det_buchi_lasso_accepts(const DetBuchiTransducer& b, const LetterLasso& left, const LetterLasso& right) {
  if (b.arity() != 2) throw InputError("det_buchi_lasso_accepts: arity must be 2");
  if (left.v.empty() || right.v.empty()) throw InputError("det_buchi_lasso_accepts: empty period");
  const LetterLasso* w[2] = {&left, &right};
  auto letter = [&](int j, std::size_t i) -> const Letter& {
    return i < w[j]->u.size() ? w[j]->u[i] : w[j]->v[i - w[j]->u.size()];
  };
  auto advance = [&](int j, std::size_t i) {
    ++i;
    return i == w[j]->u.size() + w[j]->v.size() ? w[j]->u.size() : i;
  };
  struct Step {
    int state;
    int tape;  // -1 for ε
  };
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> seen;
  std::vector<Step> trace;
  int q = b.initial;
  std::size_t pos[2] = {0, 0};
  for (;;) {
    auto [it, fresh] = seen.emplace(std::make_tuple(q, pos[0], pos[1]), trace.size());
    if (!fresh) {
      bool buchi = false, moved[2] = {false, false};
      for (std::size_t i = it->second; i < trace.size(); ++i) {
        buchi = buchi || b.accepting[trace[i].state];
        if (trace[i].tape >= 0) moved[trace[i].tape] = true;
      }
      return buchi && moved[0] && moved[1];
    }
    if (b.eps[q] >= 0) {
      trace.push_back({q, -1});
      q = b.eps[q];
      continue;
    }
    const int j = b.tape[q];
    auto e = b.delta[q].find(letter(j, pos[j]));
    if (e == b.delta[q].end()) return false;
    trace.push_back({q, j});
    pos[j] = advance(j, pos[j]);
    q = e->second;
  }
}

}  // namespace wordrel
