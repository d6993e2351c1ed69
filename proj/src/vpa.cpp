#include "wordrel/vpa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace wordrel {

int Vpa::add_state(bool acc, std::string name) {
  accepting.push_back(acc);
  names.push_back(name.empty() ? "p" + std::to_string(size() - 1) : std::move(name));
  return size() - 1;
}

void Vpa::add_push(int p, int call, int q, int gamma) {
  if (gamma == kBottom) throw InputError("push of bottom symbol");
  pushes.push_back({p, call, q, gamma});
}
void Vpa::add_pop(int p, int ret, int gamma, int q) { pops.push_back({p, ret, gamma, q}); }
void Vpa::add_int(int p, int sym, int q) { ints.push_back({p, sym, q}); }

int Vpa::find(const std::string& name) const {
  for (int q = 0; q < size(); ++q)
    if (names[q] == name) return q;
  return -1;
}

Alphabet Vpa::alphabet() const {
  std::vector<Letter> all = calls;
  all.insert(all.end(), returns.begin(), returns.end());
  all.insert(all.end(), internals.begin(), internals.end());
  return Alphabet::atomic(all);
}

LetterKind Vpa::kind(int letter) const {
  const int nc = static_cast<int>(calls.size()), nr = static_cast<int>(returns.size());
  if (letter < nc) return LetterKind::kCall;
  if (letter < nc + nr) return LetterKind::kReturn;
  return LetterKind::kInternal;
}

int Vpa::local(int letter) const {
  const int nc = static_cast<int>(calls.size()), nr = static_cast<int>(returns.size());
  if (letter < nc) return letter;
  if (letter < nc + nr) return letter - nc;
  return letter - nc - nr;
}

bool Vpa::deterministic() const {
  std::set<std::pair<int, int>> ps, is;
  std::set<std::tuple<int, int, int>> qs;
  for (const auto& t : pushes)
    if (!ps.insert({t.from, t.call}).second) return false;
  for (const auto& t : pops)
    if (!qs.insert({t.from, t.ret, t.gamma}).second) return false;
  for (const auto& t : ints)
    if (!is.insert({t.from, t.sym}).second) return false;
  return true;
}

bool Vpa::complete() const {
  std::set<std::pair<int, int>> ps, is;
  std::set<std::tuple<int, int, int>> qs;
  for (const auto& t : pushes) ps.insert({t.from, t.call});
  for (const auto& t : pops) qs.insert({t.from, t.ret, t.gamma});
  for (const auto& t : ints) is.insert({t.from, t.sym});
  for (int p = 0; p < size(); ++p) {
    for (int c = 0; c < static_cast<int>(calls.size()); ++c)
      if (!ps.count({p, c})) return false;
    for (int a = 0; a < static_cast<int>(internals.size()); ++a)
      if (!is.count({p, a})) return false;
    for (int r = 0; r < static_cast<int>(returns.size()); ++r)
      for (int g = kBottom; g < static_cast<int>(stack.size()); ++g)
        if (!qs.count({p, r, g})) return false;
  }
  return true;
}

void Vpa::validate() const {
  std::set<Letter> seen;
  for (const auto* part : {&calls, &returns, &internals})
    for (const auto& l : *part)
      if (!seen.insert(l).second) throw InputError("letter '" + l + "' in two alphabet parts");
  for (const auto& g : stack)
    if (g == kBottomName) throw InputError("stack symbol BOT is reserved");
  const int n = size(), nc = static_cast<int>(calls.size()), nr = static_cast<int>(returns.size()),
            ni = static_cast<int>(internals.size()), ng = static_cast<int>(stack.size());
  auto st = [&](int q) {
    if (q < 0 || q >= n) throw InputError("transition state out of range");
  };
  if (n == 0) throw InputError("automaton without states");
  st(initial);
  for (const auto& t : pushes) {
    st(t.from), st(t.to);
    if (t.call < 0 || t.call >= nc) throw InputError("push on a non-call letter");
    if (t.gamma < 0 || t.gamma >= ng) throw InputError("push of a non-stack symbol");
  }
  for (const auto& t : pops) {
    st(t.from), st(t.to);
    if (t.ret < 0 || t.ret >= nr) throw InputError("pop on a non-return letter");
    if (t.gamma < kBottom || t.gamma >= ng) throw InputError("pop of a non-stack symbol");
  }
  for (const auto& t : ints) {
    st(t.from), st(t.to);
    if (t.sym < 0 || t.sym >= ni) throw InputError("internal move on a non-internal letter");
  }
}

VpaIndex::VpaIndex(const Vpa& v)
    : v_(&v),
      nc_(static_cast<int>(v.calls.size())),
      nr_(static_cast<int>(v.returns.size())),
      ni_(static_cast<int>(v.internals.size())),
      ng_(static_cast<int>(v.stack.size())) {
  const int n = v.size();
  push_to_.assign(static_cast<std::size_t>(n) * nc_, -1);
  push_g_.assign(push_to_.size(), -1);
  pop_to_.assign(static_cast<std::size_t>(n) * nr_ * (ng_ + 1), -1);
  int_to_.assign(static_cast<std::size_t>(n) * ni_, -1);
  for (const auto& t : v.pushes) {
    push_to_[t.from * nc_ + t.call] = t.to;
    push_g_[t.from * nc_ + t.call] = t.gamma;
  }
  for (const auto& t : v.pops) pop_to_[(t.from * nr_ + t.ret) * (ng_ + 1) + t.gamma + 1] = t.to;
  for (const auto& t : v.ints) int_to_[t.from * ni_ + t.sym] = t.to;
}

int VpaIndex::push_target(int p, int call, int* gamma) const {
  *gamma = push_g_[p * nc_ + call];
  return push_to_[p * nc_ + call];
}
int VpaIndex::pop_target(int p, int ret, int gamma) const {
  return pop_to_[(p * nr_ + ret) * (ng_ + 1) + gamma + 1];
}
int VpaIndex::int_target(int p, int sym) const { return int_to_[p * ni_ + sym]; }

std::optional<Configuration> VpaIndex::step(const Configuration& c, int letter) const {
  Configuration n = c;
  int l = v_->local(letter);
  switch (v_->kind(letter)) {
    case LetterKind::kCall: {
      int g;
      int q = push_target(c.state, l, &g);
      if (q < 0) return std::nullopt;
      n.state = q;
      n.stack.insert(n.stack.begin(), g);
      return n;
    }
    case LetterKind::kReturn: {
      int top = c.stack.empty() ? kBottom : c.stack.front();
      int q = pop_target(c.state, l, top);
      if (q < 0) return std::nullopt;
      n.state = q;
      if (!n.stack.empty()) n.stack.erase(n.stack.begin());
      return n;
    }
    case LetterKind::kInternal: {
      int q = int_target(c.state, l);
      if (q < 0) return std::nullopt;
      n.state = q;
      return n;
    }
  }
  return std::nullopt;
}

std::optional<Configuration> dvpa_run(const Dvpa& d, const Configuration& c, const Word& w) {
  VpaIndex idx(d);
  std::optional<Configuration> cur = c;
  for (int l : w) {
    if (l < 0 || l >= d.num_letters()) throw InputError("dvpa_run: unknown letter");
    cur = idx.step(*cur, l);
    if (!cur) return std::nullopt;
  }
  return cur;
}

bool dvpa_accepts(const Dvpa& d, const Word& w) {
  auto c = dvpa_run(d, Configuration{d.initial, {}}, w);
  return c && d.accepting[c->state];
}

Dvpa complete_dvpa(const Dvpa& d) {
  if (d.complete()) return d;
  Dvpa c = d;
  std::string name = "sink";
  while (c.find(name) >= 0) name += "'";
  if (c.stack.empty() && !c.calls.empty()) c.stack.push_back("z");
  int sink = c.add_state(false, name);
  std::set<std::pair<int, int>> ps, is;
  std::set<std::tuple<int, int, int>> qs;
  for (const auto& t : c.pushes) ps.insert({t.from, t.call});
  for (const auto& t : c.pops) qs.insert({t.from, t.ret, t.gamma});
  for (const auto& t : c.ints) is.insert({t.from, t.sym});
  for (int p = 0; p < c.size(); ++p) {
    for (int x = 0; x < static_cast<int>(c.calls.size()); ++x)
      if (!ps.count({p, x})) c.add_push(p, x, sink, 0);
    for (int x = 0; x < static_cast<int>(c.internals.size()); ++x)
      if (!is.count({p, x})) c.add_int(p, x, sink);
    for (int r = 0; r < static_cast<int>(c.returns.size()); ++r)
      for (int g = kBottom; g < static_cast<int>(c.stack.size()); ++g)
        if (!qs.count({p, r, g})) c.add_pop(p, r, g, sink);
  }
  return c;
}

int pair_index(const Vpa& d, int p, int q) { return p * d.size() + q; }

Vpa square(const Vpa& d) {
  Vpa s;
  s.calls = d.calls;
  s.returns = d.returns;
  s.internals = d.internals;
  const int n = d.size(), ng = static_cast<int>(d.stack.size());
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h) s.stack.push_back(d.stack[g] + "|" + d.stack[h]);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) s.add_state(d.accepting[p] && d.accepting[q], d.names[p] + "|" + d.names[q]);
  s.initial = pair_index(d, d.initial, d.initial);
  for (const auto& a : d.pushes)
    for (const auto& b : d.pushes)
      if (a.call == b.call)
        s.add_push(pair_index(d, a.from, b.from), a.call, pair_index(d, a.to, b.to),
                   a.gamma * ng + b.gamma);
  for (const auto& a : d.pops)
    for (const auto& b : d.pops)
      if (a.ret == b.ret && a.gamma != kBottom && b.gamma != kBottom)
        s.add_pop(pair_index(d, a.from, b.from), a.ret, a.gamma * ng + b.gamma,
                  pair_index(d, a.to, b.to));
  for (const auto& a : d.ints)
    for (const auto& b : d.ints)
      if (a.sym == b.sym)
        s.add_int(pair_index(d, a.from, b.from), a.sym, pair_index(d, a.to, b.to));
  return s;
}

bool ConfigAutomaton::contains(const Configuration& c) const {
  std::vector<int> cur = eps_closure(nfa, {entry.at(c.state)});
  for (int g : c.stack) {
    cur = step(nfa, cur, g);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int q) { return nfa.accepting[q]; });
}

ConfigAutomaton single_config(const Vpa& v, const Configuration& c) {
  ConfigAutomaton ca;
  ca.nfa = Nfa(Alphabet::atomic(v.stack));
  for (int p = 0; p < v.size(); ++p) ca.entry.push_back(ca.nfa.add_state(false));
  // Entries other than c.state accept nothing; chain for the stack word.
  int cur = ca.entry[c.state];
  for (int g : c.stack) {
    int nx = ca.nfa.add_state(false);
    ca.nfa.add_edge(cur, g, nx);
    cur = nx;
  }
  ca.nfa.accepting[cur] = 1;
  return ca;
}

Nfa post_star_pds(const std::vector<PdsRule>& rules, int num_control, const Nfa& pauto) {
  const int ng = pauto.alphabet.size();
  std::map<std::pair<int, int>, std::vector<const PdsRule*>> by_head;
  for (const auto& r : rules) by_head[{r.p, r.gamma}].push_back(&r);
  int nstates = pauto.size();
  std::map<std::pair<int, int>, int> mid;
  for (const auto& r : rules)
    if (r.w.size() == 2 && !mid.count({r.q, r.w[0]})) mid[{r.q, r.w[0]}] = nstates++;

  std::vector<std::vector<std::pair<int, int>>> out(nstates);
  std::vector<std::vector<int>> eps_in(nstates);
  std::unordered_set<std::uint64_t> rel;
  auto key = [&](int p, int g, int q) {
    return (static_cast<std::uint64_t>(p) * (ng + 1) + static_cast<std::uint64_t>(g + 1)) *
               static_cast<std::uint64_t>(nstates) +
           static_cast<std::uint64_t>(q);
  };
  std::deque<std::tuple<int, int, int>> trans;
  auto add_rel = [&](int p, int g, int q) {
    if (!rel.insert(key(p, g, q)).second) return false;
    out[p].push_back({g, q});
    if (g == kEpsilon) eps_in[q].push_back(p);
    return true;
  };
  for (int p = 0; p < pauto.size(); ++p)
    for (const auto& e : pauto.out[p]) {
      if (p < num_control) trans.emplace_back(p, e.sym, e.to);
      else add_rel(p, e.sym, e.to);
    }
  while (!trans.empty()) {
    auto [p, g, q] = trans.front();
    trans.pop_front();
    if (!add_rel(p, g, q)) continue;
    if (g != kEpsilon) {
      auto it = by_head.find({p, g});
      if (it == by_head.end()) continue;
      for (const PdsRule* r : it->second) {
        if (r->w.empty()) {
          trans.emplace_back(r->q, kEpsilon, q);
        } else if (r->w.size() == 1) {
          trans.emplace_back(r->q, r->w[0], q);
        } else {
          int qm = mid.at({r->q, r->w[0]});
          trans.emplace_back(r->q, r->w[0], qm);
          if (add_rel(qm, r->w[1], q))
            for (int pp : eps_in[qm]) trans.emplace_back(pp, r->w[1], q);
        }
      }
    } else {
      auto copy = out[q];
      for (auto [g2, q2] : copy) trans.emplace_back(p, g2, q2);
    }
  }
  Nfa res(pauto.alphabet);
  for (int s = 0; s < nstates; ++s) res.add_state(s < pauto.size() && pauto.accepting[s]);
  for (int s = 0; s < nstates; ++s)
    for (auto [g, t] : out[s]) res.add_edge(s, g, t);
  return res;
}

std::vector<PdsRule> compile_rules(const Vpa& v) {
  const int bot = static_cast<int>(v.stack.size());
  std::vector<PdsRule> rules;
  for (const auto& t : v.pushes)
    for (int x = 0; x <= bot; ++x) rules.push_back({t.from, x, t.to, {t.gamma, x}});
  for (const auto& t : v.pops) {
    if (t.gamma == kBottom) rules.push_back({t.from, bot, t.to, {bot}});
    else rules.push_back({t.from, t.gamma, t.to, {}});
  }
  for (const auto& t : v.ints)
    for (int x = 0; x <= bot; ++x) rules.push_back({t.from, x, t.to, {x}});
  return rules;
}

ConfigAutomaton post_star(const Vpa& v, const ConfigAutomaton& c) {
  const int n = v.size(), bot = static_cast<int>(v.stack.size());
  std::vector<Letter> gl = v.stack;
  gl.push_back(kBottomName);
  Nfa pa(Alphabet::atomic(gl));
  for (int p = 0; p < n; ++p) pa.add_state(false);
  const int off = pa.size();
  for (int s = 0; s < c.nfa.size(); ++s) pa.add_state(false);
  const int fin = pa.add_state(true);
  for (int s = 0; s < c.nfa.size(); ++s) {
    for (const auto& e : c.nfa.out[s]) pa.add_edge(s + off, e.sym, e.to + off);
    if (c.nfa.accepting[s]) pa.add_edge(s + off, bot, fin);
  }
  for (int p = 0; p < n; ++p) {
    // Control states copy the closure of their entry so they have no incoming edges.
    for (int s : eps_closure(c.nfa, {c.entry[p]})) {
      for (const auto& e : c.nfa.out[s])
        if (e.sym != kEpsilon) pa.add_edge(p, e.sym, e.to + off);
      if (c.nfa.accepting[s]) pa.add_edge(p, bot, fin);
    }
  }
  Nfa sat = post_star_pds(compile_rules(v), n, pa);
  ConfigAutomaton res;
  res.nfa = Nfa(Alphabet::atomic(v.stack));
  for (int s = 0; s < sat.size(); ++s) res.nfa.add_state(false);
  for (int s = 0; s < sat.size(); ++s)
    for (const auto& e : sat.out[s]) {
      if (e.sym == bot) {
        if (e.to == fin) res.nfa.accepting[s] = 1;
      } else {
        res.nfa.add_edge(s, e.sym, e.to);
      }
    }
  for (int p = 0; p < n; ++p) res.entry.push_back(p);
  return res;
}

namespace {

// Summary fixpoint: least relation closed under internal moves and push·wm·pop.
std::vector<std::vector<char>> summaries(const Vpa& v) {
  const int n = v.size();
  std::vector<std::vector<char>> wm(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> ints(n);
  std::vector<std::vector<std::pair<int, int>>> pushes(n);  // (to, gamma)
  std::map<std::pair<int, int>, std::vector<int>> pops;     // (from, gamma) -> targets
  for (const auto& t : v.ints) ints[t.from].push_back(t.to);
  for (const auto& t : v.pushes) pushes[t.from].push_back({t.to, t.gamma});
  for (const auto& t : v.pops)
    if (t.gamma != kBottom) pops[{t.from, t.gamma}].push_back(t.to);
  std::vector<std::vector<std::pair<int, int>>> callers(n);  // at y1: (x, gamma)
  std::vector<std::vector<int>> known(n);                    // known[x] = {y : wm[x][y]}
  std::deque<std::pair<int, int>> work;
  auto add = [&](int x, int y) {
    if (wm[x][y]) return;
    wm[x][y] = 1;
    known[x].push_back(y);
    work.emplace_back(x, y);
  };
  for (int x = 0; x < n; ++x) add(x, x);
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (int z : ints[y]) add(x, z);
    for (auto [y1, g] : pushes[y]) {
      callers[y1].push_back({x, g});
      auto it = pops.end();
      for (std::size_t k = 0; k < known[y1].size(); ++k) {
        int y2 = known[y1][k];
        it = pops.find({y2, g});
        if (it != pops.end())
          for (int z : it->second) add(x, z);
      }
    }
    // (x, y) as the inner summary of earlier callers waiting at x.
    for (std::size_t k = 0; k < callers[x].size(); ++k) {
      auto [x0, g] = callers[x][k];
      auto it = pops.find({y, g});
      if (it != pops.end())
        for (int z : it->second) add(x0, z);
    }
  }
  return wm;
}

}  // namespace

std::vector<std::vector<char>> well_matched_single(const Vpa& v) { return summaries(v); }

std::vector<std::vector<char>> well_matched_pairs(const Vpa& d, WmMethod m) {
  Vpa sq = square(d);
  if (m == WmMethod::kSummary) return summaries(sq);
  const int n = sq.size();
  std::vector<std::vector<char>> wm(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x) {
    ConfigAutomaton post = post_star(sq, single_config(sq, {x, {}}));
    for (int y = 0; y < n; ++y) wm[x][y] = post.contains({y, {}}) ? 1 : 0;
  }
  return wm;
}

Nesting nesting(const Vpa& v, const Word& w) {
  Nesting r;
  std::vector<int> open;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    switch (v.kind(w[i])) {
      case LetterKind::kCall:
        open.push_back(i);
        break;
      case LetterKind::kReturn:
        if (open.empty()) {
          r.unmatched_returns.push_back(i);
        } else {
          r.matched.push_back({open.back(), i});
          open.pop_back();
        }
        break;
      case LetterKind::kInternal:
        break;
    }
  }
  r.unmatched_calls = open;
  return r;
}

bool well_matched(const Vpa& v, const Word& w) {
  Nesting n = nesting(v, w);
  return n.unmatched_calls.empty() && n.unmatched_returns.empty();
}

}  // namespace wordrel
