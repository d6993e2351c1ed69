#include "wordrel/slender.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace wordrel {

namespace {

// Shortest word from any source to a state satisfying `goal`; empty word allowed.
std::optional<std::pair<int, Word>> shortest_path(const Nfa& a, const std::vector<int>& sources,
                                                  const std::vector<char>& goal) {
  std::vector<int> par(a.size(), -2), sym(a.size(), kEpsilon);
  std::deque<int> dq;
  for (int s : sources)
    if (par[s] == -2) par[s] = -1, dq.push_back(s);
  while (!dq.empty()) {
    int x = dq.front();
    dq.pop_front();
    if (goal[x]) {
      Word w;
      for (int y = x; par[y] >= 0; y = par[y]) w.push_back(sym[y]);
      std::reverse(w.begin(), w.end());
      return std::make_pair(x, w);
    }
    for (const auto& e : a.out[x])
      if (par[e.to] == -2) par[e.to] = x, sym[e.to] = e.sym, dq.push_back(e.to);
  }
  return std::nullopt;
}

// Shortest nonempty cycle through q.
Word shortest_cycle(const Nfa& a, int q) {
  std::vector<char> goal(a.size(), 0);
  goal[q] = 1;
  Word best;
  bool found = false;
  for (const auto& e : a.out[q]) {
    auto p = shortest_path(a, {e.to}, goal);
    if (p && (!found || p->second.size() + 1 < best.size())) {
      best = {e.sym};
      best.insert(best.end(), p->second.begin(), p->second.end());
      found = true;
    }
  }
  return best;
}

bool runs(const Nfa& a, int from, const Word& w, int to) {
  std::vector<int> cur{from};
  for (int s : w) cur = step(a, cur, s);
  return std::find(cur.begin(), cur.end(), to) != cur.end();
}

bool runs_to_accepting(const Nfa& a, int from, const Word& w) {
  std::vector<int> cur{from};
  for (int s : w) cur = step(a, cur, s);
  return std::any_of(cur.begin(), cur.end(), [&](int x) { return a.accepting[x]; });
}

}  // namespace

SlenderVerdict is_slender(const Nfa& input) {
  const Nfa a = eliminate_epsilon(input);
  const int n = a.size();
  auto g = successor_graph(a);
  auto reach = reachable_from(g, a.initial);
  int nc = 0;
  auto comp = scc_ids(g, &nc);
  std::vector<int> csize(nc, 0);
  for (int q = 0; q < n; ++q) ++csize[comp[q]];
  std::vector<char> loop(n, 0);
  for (int q = 0; q < n; ++q) {
    if (csize[comp[q]] > 1) loop[q] = 1;
    for (int t : g[q])
      if (t == q) loop[q] = 1;
  }
  std::vector<int> fin;
  for (int q = 0; q < n; ++q)
    if (a.accepting[q]) fin.push_back(q);
  auto rg = reverse_graph(g);
  auto cof = reachable_from(rg, fin);
  std::vector<char> pump(n, 0);
  std::vector<int> pumps;
  for (int q = 0; q < n; ++q)
    if (loop[q] && cof[q]) pump[q] = 1, pumps.push_back(q);
  auto to_pump = reachable_from(rg, pumps);

  // Flagged pair graph, searched from each looping reachable q.
  auto id = [n](int x, int y, int b) { return ((x * n) + y) * 2 + b; };
  for (int q = 0; q < n; ++q) {
    if (!reach[q] || !loop[q]) continue;
    const int nodes = n * n * 2;
    std::vector<int> par(nodes, -2), psym1(nodes), psym2(nodes);
    std::deque<int> dq;
    par[id(q, q, 0)] = -1;
    dq.push_back(id(q, q, 0));
    int hit = -1;
    while (!dq.empty() && hit < 0) {
      int cur = dq.front();
      dq.pop_front();
      int b = cur % 2, y = (cur / 2) % n, x = cur / 2 / n;
      if (b && to_pump[x] && to_pump[y]) {
        hit = cur;
        break;
      }
      for (const auto& e : a.out[x])
        for (const auto& f : a.out[y]) {
          int nb = b | (e.sym != f.sym ? 1 : 0);
          int nx = id(e.to, f.to, nb);
          if (par[nx] != -2) continue;
          par[nx] = cur;
          psym1[nx] = e.sym;
          psym2[nx] = f.sym;
          dq.push_back(nx);
        }
    }
    if (hit < 0) continue;

    SlenderWitness s;
    s.q = q;
    {
      std::vector<char> goal(n, 0);
      goal[q] = 1;
      s.w0 = shortest_path(a, a.initial, goal)->second;
    }
    s.w = shortest_cycle(a, q);
    Word x1, x2;
    std::vector<int> flags;
    for (int c = hit; par[c] >= 0; c = par[c]) {
      x1.push_back(psym1[c]);
      x2.push_back(psym2[c]);
    }
    std::reverse(x1.begin(), x1.end());
    std::reverse(x2.begin(), x2.end());
    for (std::size_t i = 0; i < x1.size(); ++i)
      if (x1[i] != x2[i]) {
        s.index = static_cast<int>(i);
        break;
      }
    int x = hit / 2 / n, y = (hit / 2) % n;
    auto t1 = shortest_path(a, {x}, pump);
    auto t2 = shortest_path(a, {y}, pump);
    s.p1 = t1->first;
    s.p2 = t2->first;
    s.u1 = x1;
    s.u1.insert(s.u1.end(), t1->second.begin(), t1->second.end());
    s.u2 = x2;
    s.u2.insert(s.u2.end(), t2->second.begin(), t2->second.end());
    s.w1 = shortest_cycle(a, s.p1);
    s.w2 = shortest_cycle(a, s.p2);
    std::vector<char> acc(a.accepting.begin(), a.accepting.end());
    s.v1 = shortest_path(a, {s.p1}, acc)->second;
    s.v2 = shortest_path(a, {s.p2}, acc)->second;
    return {false, s};
  }
  return {true, std::nullopt};
}

bool replay_witness(const Nfa& input, const SlenderWitness& s) {
  const Nfa a = eliminate_epsilon(input);
  if (s.w.empty() || s.w1.empty() || s.w2.empty() || s.u1.empty() || s.u2.empty()) return false;
  if (s.index < 0 || static_cast<std::size_t>(s.index) >= std::min(s.u1.size(), s.u2.size()))
    return false;
  if (s.u1[s.index] == s.u2[s.index]) return false;
  bool start = false;
  for (int q0 : a.initial) start = start || runs(a, q0, s.w0, s.q);
  return start && runs(a, s.q, s.w, s.q) && runs(a, s.q, s.u1, s.p1) && runs(a, s.q, s.u2, s.p2) &&
         runs(a, s.p1, s.w1, s.p1) && runs(a, s.p2, s.w2, s.p2) && runs_to_accepting(a, s.p1, s.v1) &&
         runs_to_accepting(a, s.p2, s.v2);
}

std::vector<Word> pump_witness(const SlenderWitness& s, int n) {
  auto prefix_of_loop = [&](const Word& u) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != s.w[i % s.w.size()]) return false;
    return true;
  };
  bool first = !prefix_of_loop(s.u1);
  const Word& u = first ? s.u1 : s.u2;
  const Word& wl = first ? s.w1 : s.w2;
  const Word& v = first ? s.v1 : s.v2;
  std::size_t l = std::lcm(s.w.size(), wl.size());
  Word big, bigl;
  for (std::size_t i = 0; i < l / s.w.size(); ++i) big.insert(big.end(), s.w.begin(), s.w.end());
  for (std::size_t i = 0; i < l / wl.size(); ++i) bigl.insert(bigl.end(), wl.begin(), wl.end());
  std::vector<Word> out;
  for (int i = 0; i <= n; ++i) {
    Word x = s.w0;
    for (int k = 0; k < i; ++k) x.insert(x.end(), big.begin(), big.end());
    x.insert(x.end(), u.begin(), u.end());
    for (int k = 0; k < n - i; ++k) x.insert(x.end(), bigl.begin(), bigl.end());
    x.insert(x.end(), v.begin(), v.end());
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace wordrel
