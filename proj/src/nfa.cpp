#include "wordrel/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace wordrel {

int Nfa::add_state(bool acc) {
  out.emplace_back();
  accepting.push_back(acc ? 1 : 0);
  if (!names.empty()) names.push_back("s" + std::to_string(size() - 1));
  return size() - 1;
}

int Nfa::add_state(bool acc, std::string name) {
  while (static_cast<int>(names.size()) < size()) names.push_back("s" + std::to_string(names.size()));
  out.emplace_back();
  accepting.push_back(acc ? 1 : 0);
  names.push_back(std::move(name));
  return size() - 1;
}

void Nfa::add_edge(int p, int sym, int q) {
  if (p < 0 || q < 0 || p >= size() || q >= size()) throw InputError("edge endpoint out of range");
  if (sym != kEpsilon && (sym < 0 || sym >= alphabet.size()))
    throw InputError("edge symbol out of range");
  out[p].push_back({sym, q});
}

void Nfa::add_initial(int q) {
  if (std::find(initial.begin(), initial.end(), q) == initial.end()) initial.push_back(q);
}

bool Nfa::has_epsilon() const {
  for (const auto& es : out)
    for (const auto& e : es)
      if (e.sym == kEpsilon) return true;
  return false;
}

std::string Nfa::state_name(int q) const {
  if (q >= 0 && q < static_cast<int>(names.size())) return names[q];
  return "s" + std::to_string(q);
}

std::size_t Nfa::num_edges() const {
  std::size_t n = 0;
  for (const auto& es : out) n += es.size();
  return n;
}

int Dfa::run(const Word& w) const {
  int q = initial;
  for (int a : w) q = next(q, a);
  return q;
}

Nfa Dfa::to_nfa() const {
  Nfa n(alphabet);
  for (int q = 0; q < num_states; ++q) n.add_state(accepting[q]);
  n.add_initial(initial);
  for (int q = 0; q < num_states; ++q)
    for (int a = 0; a < alphabet.size(); ++a) n.add_edge(q, a, next(q, a));
  return n;
}

std::vector<int> eps_closure(const Nfa& a, std::vector<int> states) {
  std::vector<char> seen(a.size(), 0);
  std::vector<int> stack;
  for (int q : states)
    if (!seen[q]) seen[q] = 1, stack.push_back(q);
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (const auto& e : a.out[q])
      if (e.sym == kEpsilon && !seen[e.to]) seen[e.to] = 1, stack.push_back(e.to);
  }
  std::vector<int> res;
  for (int q = 0; q < a.size(); ++q)
    if (seen[q]) res.push_back(q);
  return res;
}

std::vector<int> step(const Nfa& a, const std::vector<int>& states, int sym) {
  std::vector<int> nxt;
  for (int q : states)
    for (const auto& e : a.out[q])
      if (e.sym == sym) nxt.push_back(e.to);
  std::sort(nxt.begin(), nxt.end());
  nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
  return eps_closure(a, std::move(nxt));
}

Dfa determinize(const Nfa& a, std::size_t budget) {
  Dfa d;
  d.alphabet = a.alphabet;
  const int k = a.alphabet.size();
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<int>(sets.size()));
    if (fresh) {
      check_budget(sets.size() + 1, budget, "determinize");
      sets.push_back(std::move(s));
    }
    return it->second;
  };
  std::vector<int> init = a.initial;
  std::sort(init.begin(), init.end());
  d.initial = intern(eps_closure(a, init));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int s = 0; s < k; ++s) {
      int t = intern(step(a, sets[i], s));
      d.delta.push_back(t);
    }
  }
  d.num_states = static_cast<int>(sets.size());
  d.accepting.assign(d.num_states, 0);
  for (int i = 0; i < d.num_states; ++i)
    for (int q : sets[i])
      if (a.accepting[q]) d.accepting[i] = 1;
  return d;
}

Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (auto& x : c.accepting) x = !x;
  return c;
}

Dfa minimize(const Dfa& d) {
  const int n = d.num_states, k = d.alphabet.size();
  std::vector<int> block(n);
  for (int q = 0; q < n; ++q) block[q] = d.accepting[q] ? 1 : 0;
  int count = 0;
  // Moore refinement: split by (block, successor blocks) until stable.
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{block[q]};
      for (int a = 0; a < k; ++a) sig.push_back(block[d.next(q, a)]);
      next[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    int c = static_cast<int>(ids.size());
    block.swap(next);
    if (c == count) break;
    count = c;
  }
  Dfa m;
  m.alphabet = d.alphabet;
  m.num_states = count;
  m.initial = block[d.initial];
  m.accepting.assign(count, 0);
  m.delta.assign(static_cast<std::size_t>(count) * k, 0);
  for (int q = 0; q < n; ++q) {
    m.accepting[block[q]] = d.accepting[q];
    for (int a = 0; a < k; ++a) m.delta[static_cast<std::size_t>(block[q]) * k + a] = block[d.next(q, a)];
  }
  return m;
}

Nfa complement_nfa(const Nfa& a, std::size_t budget) {
  return complement(minimize(determinize(a, budget))).to_nfa();
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  if (a.alphabet != b.alphabet) throw InputError("intersect: alphabet mismatch");
  Nfa r(a.alphabet);
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> work;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::make_pair(p, q), r.size());
    if (fresh) {
      r.add_state(a.accepting[p] && b.accepting[q]);
      work.emplace_back(p, q);
    }
    return it->second;
  };
  for (int p : a.initial)
    for (int q : b.initial) r.add_initial(intern(p, q));
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    int src = ids[{p, q}];
    for (const auto& e : a.out[p]) {
      if (e.sym == kEpsilon) {
        int t = intern(e.to, q);
        r.add_edge(src, kEpsilon, t);
        continue;
      }
      for (const auto& f : b.out[q])
        if (f.sym == e.sym) {
          int t = intern(e.to, f.to);
          r.add_edge(src, e.sym, t);
        }
    }
    for (const auto& f : b.out[q])
      if (f.sym == kEpsilon) {
        int t = intern(p, f.to);
        r.add_edge(src, kEpsilon, t);
      }
  }
  return r;
}

Nfa union_nfa(const Nfa& a, const Nfa& b) {
  if (a.alphabet != b.alphabet) throw InputError("union: alphabet mismatch");
  Nfa r = a;
  r.names.clear();
  int off = r.size();
  for (int q = 0; q < b.size(); ++q) r.add_state(b.accepting[q]);
  for (int q = 0; q < b.size(); ++q)
    for (const auto& e : b.out[q]) r.add_edge(q + off, e.sym, e.to + off);
  for (int q : b.initial) r.add_initial(q + off);
  return r;
}

Nfa project(const Nfa& a, const std::vector<int>& keep) {
  const int k = a.alphabet.arity();
  if (keep.empty()) throw InputError("project: empty index set");
  for (int i : keep)
    if (i < 0 || i >= k) throw InputError("project: index out of range");
  std::vector<Symbol> syms;
  std::map<Symbol, int> seen;
  std::vector<int> map(a.alphabet.size());
  for (int s = 0; s < a.alphabet.size(); ++s) {
    Symbol p;
    for (int i : keep) p.push_back(a.alphabet.symbol(s)[i]);
    auto [it, fresh] = seen.emplace(p, static_cast<int>(syms.size()));
    if (fresh) syms.push_back(p);
    map[s] = it->second;
  }
  return relabel(a, Alphabet(std::move(syms)), [&](int s) { return map[s]; });
}

Nfa relabel(const Nfa& a, const Alphabet& target, const std::function<int(int)>& f) {
  Nfa r(target);
  r.names = a.names;
  r.initial = a.initial;
  r.accepting = a.accepting;
  r.out.resize(a.size());
  for (int q = 0; q < a.size(); ++q)
    for (const auto& e : a.out[q]) r.add_edge(q, e.sym == kEpsilon ? kEpsilon : f(e.sym), e.to);
  return r;
}

Verdict is_empty(const Nfa& a) {
  // BFS where epsilon edges cost nothing (0-1 BFS) so the witness is shortest.
  const int n = a.size();
  std::vector<int> dist(n, -1), par(n, -1), psym(n, kEpsilon);
  std::deque<int> dq;
  for (int q : a.initial)
    if (dist[q] < 0) dist[q] = 0, dq.push_back(q);
  std::vector<char> done(n, 0);
  while (!dq.empty()) {
    int q = dq.front();
    dq.pop_front();
    if (done[q]) continue;
    done[q] = 1;
    if (a.accepting[q]) {
      Word w;
      for (int x = q; par[x] >= 0; x = par[x])
        if (psym[x] != kEpsilon) w.push_back(psym[x]);
      std::reverse(w.begin(), w.end());
      return {false, w, ""};
    }
    for (const auto& e : a.out[q]) {
      int nd = dist[q] + (e.sym == kEpsilon ? 0 : 1);
      if (dist[e.to] < 0 || nd < dist[e.to]) {
        dist[e.to] = nd;
        par[e.to] = q;
        psym[e.to] = e.sym;
        if (e.sym == kEpsilon) dq.push_front(e.to);
        else dq.push_back(e.to);
      }
    }
  }
  return {true, std::nullopt, ""};
}

Nfa eliminate_epsilon(const Nfa& a) {
  if (!a.has_epsilon()) return a;
  Nfa r(a.alphabet);
  r.names = a.names;
  for (int q = 0; q < a.size(); ++q) r.add_state(false);
  r.initial = a.initial;
  for (int q = 0; q < a.size(); ++q) {
    auto cl = eps_closure(a, {q});
    std::set<std::pair<int, int>> edges;
    for (int s : cl) {
      if (a.accepting[s]) r.accepting[q] = 1;
      for (const auto& e : a.out[s])
        if (e.sym != kEpsilon) edges.insert({e.sym, e.to});
    }
    for (auto [sym, to] : edges) r.add_edge(q, sym, to);
  }
  return r;
}

bool accepts(const Nfa& a, const Word& w) {
  for (int s : w)
    if (s < 0 || s >= a.alphabet.size()) throw InputError("accepts: unknown symbol");
  std::vector<int> cur = a.initial;
  std::sort(cur.begin(), cur.end());
  cur = eps_closure(a, cur);
  for (int s : w) {
    cur = step(a, cur, s);
    if (cur.empty()) return false;
  }
  for (int q : cur)
    if (a.accepting[q]) return true;
  return false;
}

bool accepts(const Dfa& d, const Word& w) {
  for (int s : w)
    if (s < 0 || s >= d.alphabet.size()) throw InputError("accepts: unknown symbol");
  return d.accepting[d.run(w)];
}

std::vector<std::vector<int>> successor_graph(const Nfa& a) {
  std::vector<std::vector<int>> g(a.size());
  for (int q = 0; q < a.size(); ++q)
    for (const auto& e : a.out[q]) g[q].push_back(e.to);
  return g;
}

std::vector<std::vector<int>> reverse_graph(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> r(adj.size());
  for (std::size_t q = 0; q < adj.size(); ++q)
    for (int t : adj[q]) r[t].push_back(static_cast<int>(q));
  return r;
}

std::vector<char> reachable_from(const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& sources) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> st;
  for (int s : sources)
    if (!seen[s]) seen[s] = 1, st.push_back(s);
  while (!st.empty()) {
    int q = st.back();
    st.pop_back();
    for (int t : adj[q])
      if (!seen[t]) seen[t] = 1, st.push_back(t);
  }
  return seen;
}

std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj, int* count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), st;
  std::vector<char> on(n, 0);
  int counter = 0, ncomp = 0;
  // Iterative Tarjan.
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (idx[root] >= 0) continue;
    call.push_back({root, 0});
    idx[root] = low[root] = counter++;
    st.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          st.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      } else {
        int done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] == idx[done]) {
          int w;
          do {
            w = st.back();
            st.pop_back();
            on[w] = 0;
            comp[w] = ncomp;
          } while (w != done);
          ++ncomp;
        }
      }
    }
  }
  if (count) *count = ncomp;
  return comp;
}

Nfa trim(const Nfa& a) {
  auto g = successor_graph(a);
  auto fwd = reachable_from(g, a.initial);
  std::vector<int> acc;
  for (int q = 0; q < a.size(); ++q)
    if (a.accepting[q]) acc.push_back(q);
  auto bwd = reachable_from(reverse_graph(g), acc);
  std::vector<int> map(a.size(), -1);
  Nfa r(a.alphabet);
  bool named = !a.names.empty();
  for (int q = 0; q < a.size(); ++q)
    if (fwd[q] && bwd[q]) {
      map[q] = named ? r.add_state(a.accepting[q], a.names[q]) : r.add_state(a.accepting[q]);
    }
  for (int q = 0; q < a.size(); ++q)
    if (map[q] >= 0)
      for (const auto& e : a.out[q])
        if (map[e.to] >= 0) r.add_edge(map[q], e.sym, map[e.to]);
  for (int q : a.initial)
    if (map[q] >= 0) r.add_initial(map[q]);
  return r;
}

bool is_finite_language(const Nfa& a) {
  Nfa t = trim(eliminate_epsilon(a));
  auto g = successor_graph(t);
  int nc = 0;
  auto comp = scc_ids(g, &nc);
  std::vector<int> sz(nc, 0);
  for (int q = 0; q < t.size(); ++q) ++sz[comp[q]];
  for (int q = 0; q < t.size(); ++q)
    for (int x : g[q])
      if (comp[x] == comp[q] && (sz[comp[q]] > 1 || x == q)) return false;
  return true;
}

}  // namespace wordrel
