#include "tsp12/f2m.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "tsp12/mincut.hpp"

namespace tsp12 {

namespace {

const Rational kHalf(1, 2);

std::vector<NodeId> normalize_cycle(std::vector<NodeId> cyc) {
  auto smallest = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), smallest, cyc.end());
  if (cyc.size() > 2 && cyc[1] > cyc.back())
    std::reverse(cyc.begin() + 1, cyc.end());
  return cyc;
}

std::vector<NodeId> normalize_path(std::vector<NodeId> path) {
  if (path.front() > path.back()) std::reverse(path.begin(), path.end());
  return path;
}

std::string describe_component(const std::vector<NodeId>& nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(nodes[i]);
  }
  return s + "}";
}

}  // namespace

F2MDecomposition decompose(const FracSolution& x) {
  const int n = x.n;
  for (const auto& [e, v] : x.x) {
    if (v != kHalf && v != 1)
      throw structural_error("not an F2M vertex: x(" + std::to_string(e.u) + "-" +
                             std::to_string(e.v) + ") = " + to_string(v));
  }
  if (!x.degrees_are_two())
    throw structural_error("not an F2M solution: a degree constraint fails");

  std::vector<std::vector<NodeId>> half_adj(n), one_adj(n);
  for (const auto& [e, v] : x.x) {
    auto& adj = (v == kHalf) ? half_adj : one_adj;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(half_adj[v].begin(), half_adj[v].end());
    std::sort(one_adj[v].begin(), one_adj[v].end());
    if (half_adj[v].size() != 0 && half_adj[v].size() != 2)
      throw structural_error("not an F2M vertex: node " + std::to_string(v) + " has " +
                             std::to_string(half_adj[v].size()) + " half-edges");
  }

  // Support components.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : half_adj[u])
        if (comp[w] < 0) { comp[w] = ncomp; stack.push_back(w); }
      for (int w : one_adj[u])
        if (comp[w] < 0) { comp[w] = ncomp; stack.push_back(w); }
    }
    ++ncomp;
  }
  std::vector<std::vector<NodeId>> comp_nodes(ncomp);
  for (int v = 0; v < n; ++v)
    if (comp[v] >= 0) comp_nodes[comp[v]].push_back(v);

  F2MDecomposition out;
  std::vector<bool> visited(n, false);
  for (int c = 0; c < ncomp; ++c) {
    const auto& nodes = comp_nodes[c];
    bool has_half = false;
    for (NodeId v : nodes)
      if (!half_adj[v].empty()) { has_half = true; break; }

    if (!has_half) {
      // Pure x=1 component: must be a single cycle.
      NodeId s = nodes.front();
      if (one_adj[s].size() != 2)
        throw structural_error("integer component " + describe_component(nodes) +
                               " is not a cycle");
      std::vector<NodeId> cyc{s};
      NodeId prev = s, cur = one_adj[s][0];
      while (cur != s) {
        if (one_adj[cur].size() != 2)
          throw structural_error("integer component " + describe_component(nodes) +
                                 " is not a cycle");
        cyc.push_back(cur);
        NodeId nxt = (one_adj[cur][0] == prev) ? one_adj[cur][1] : one_adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (cyc.size() != nodes.size() || cyc.size() < 3)
        throw structural_error("integer component " + describe_component(nodes) +
                               " is not a single cycle of length >= 3");
      out.integer_cycles.push_back(normalize_cycle(std::move(cyc)));
      continue;
    }

    FracComponent fc;
    for (NodeId s : nodes) {
      if (visited[s] || half_adj[s].empty()) continue;
      std::vector<NodeId> cyc{s};
      visited[s] = true;
      NodeId prev = s, cur = half_adj[s][0];
      while (cur != s) {
        visited[cur] = true;
        cyc.push_back(cur);
        NodeId nxt = (half_adj[cur][0] == prev) ? half_adj[cur][1] : half_adj[cur][0];
        prev = cur;
        cur = nxt;
      }
      if (cyc.size() % 2 == 0)
        throw structural_error("not an F2M vertex: even half-cycle " +
                               describe_component(cyc) + " in component " +
                               describe_component(nodes));
      if (cyc.size() < 3)
        throw structural_error("half-cycle shorter than 3 in component " +
                               describe_component(nodes));
      fc.half_cycles.push_back(normalize_cycle(std::move(cyc)));
    }
    // 1-paths: walk from each cycle node's unique 1-edge to the far end.
    std::set<Edge> path_edges_seen;
    for (NodeId s : nodes) {
      if (half_adj[s].empty()) continue;
      if (one_adj[s].size() != 1)
        throw structural_error("cycle node " + std::to_string(s) + " carries " +
                               std::to_string(one_adj[s].size()) + " x=1 edges");
      Edge first(s, one_adj[s][0]);
      if (path_edges_seen.count(first)) continue;
      std::vector<NodeId> path{s};
      NodeId prev = s, cur = one_adj[s][0];
      path_edges_seen.insert(first);
      while (half_adj[cur].empty()) {
        if (one_adj[cur].size() != 2)
          throw structural_error("1-path interior node " + std::to_string(cur) +
                                 " has degree != 2 in x=1 edges");
        path.push_back(cur);
        NodeId nxt = (one_adj[cur][0] == prev) ? one_adj[cur][1] : one_adj[cur][0];
        path_edges_seen.insert(Edge(cur, nxt));
        prev = cur;
        cur = nxt;
        if (cur == s)
          throw structural_error("x=1 cycle inside fractional component " +
                                 describe_component(nodes));
      }
      path.push_back(cur);
      fc.one_paths.push_back(normalize_path(std::move(path)));
    }
    std::sort(fc.half_cycles.begin(), fc.half_cycles.end());
    std::sort(fc.one_paths.begin(), fc.one_paths.end());
    out.fractional_components.push_back(std::move(fc));
  }
  std::sort(out.integer_cycles.begin(), out.integer_cycles.end());

  if (reassemble(out, n).x != x.x)
    throw structural_error("decomposition does not reassemble to the input");
  return out;
}

FracSolution reassemble(const F2MDecomposition& d, int n) {
  FracSolution x;
  x.n = n;
  for (const auto& cyc : d.integer_cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i)
      x.set(Edge(cyc[i], cyc[(i + 1) % cyc.size()]), Rational(1));
  for (const auto& fc : d.fractional_components) {
    for (const auto& cyc : fc.half_cycles)
      for (std::size_t i = 0; i < cyc.size(); ++i)
        x.set(Edge(cyc[i], cyc[(i + 1) % cyc.size()]), kHalf);
    for (const auto& path : fc.one_paths)
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        x.set(Edge(path[i], path[i + 1]), Rational(1));
  }
  return x;
}

F2MStats f2m_stats(const Instance& inst, const F2MDecomposition& d) {
  F2MStats st;
  for (const auto& fc : d.fractional_components) {
    for (const auto& cyc : fc.half_cycles) {
      st.k += static_cast<int>(cyc.size());
      for (std::size_t i = 0; i < cyc.size(); ++i)
        if (inst.cost(Edge(cyc[i], cyc[(i + 1) % cyc.size()])) == 2) ++st.p;
    }
    for (const auto& path : fc.one_paths)
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        st.c_paths += inst.cost(Edge(path[i], path[i + 1]));
  }
  return st;
}

bool is_two_connected(const FracSolution& x) {
  if (!x.degrees_are_two())
    throw precondition_error("is_two_connected requires degree constraints");
  if (x.n < 2) return true;
  return stoer_wagner_min_cut(x).value >= 2;
}

namespace {

struct OffendingPath {
  Edge path_edge;        // the single cost-1 edge
  int cycle_a, cycle_b;  // half-cycle indices within the component
  int component;
};

std::optional<OffendingPath> find_offending(const Instance& inst,
                                            const F2MDecomposition& d) {
  std::optional<OffendingPath> best;
  for (std::size_t ci = 0; ci < d.fractional_components.size(); ++ci) {
    const auto& fc = d.fractional_components[ci];
    auto cycle_of = [&](NodeId v) -> int {
      for (std::size_t k = 0; k < fc.half_cycles.size(); ++k)
        for (NodeId u : fc.half_cycles[k])
          if (u == v) return static_cast<int>(k);
      return -1;
    };
    for (const auto& path : fc.one_paths) {
      if (path.size() != 2) continue;  // longer paths cost at least 2
      Edge pe(path[0], path[1]);
      if (inst.cost(pe) != 1) continue;
      int ca = cycle_of(path[0]), cb = cycle_of(path[1]);
      if (ca < 0 || cb < 0 || ca == cb) continue;
      bool all_one = true;
      for (NodeId endpoint : {path[0], path[1]}) {
        const auto& cyc = fc.half_cycles[cycle_of(endpoint)];
        const int len = static_cast<int>(cyc.size());
        for (int i = 0; i < len; ++i) {
          if (cyc[i] != endpoint) continue;
          if (inst.cost(Edge(cyc[i], cyc[(i + 1) % len])) != 1 ||
              inst.cost(Edge(cyc[i], cyc[(i + len - 1) % len])) != 1)
            all_one = false;
        }
      }
      if (!all_one) continue;
      if (!best || pe < best->path_edge)
        best = OffendingPath{pe, ca, cb, static_cast<int>(ci)};
    }
  }
  return best;
}

// After an endpoint loses its 1-path, both of its cycle edges rise to 1 and
// the rest of the odd cycle alternates 0/1; parity makes this consistent.
void rewire_cycle(FracSolution& x, const std::vector<NodeId>& cyc, NodeId endpoint) {
  const int len = static_cast<int>(cyc.size());
  int start = -1;
  for (int i = 0; i < len; ++i)
    if (cyc[i] == endpoint) { start = i; break; }
  if (start < 0) throw structural_error("rewire endpoint not on its cycle");
  for (int i = 0; i < len; ++i) {
    Edge e(cyc[(start + i) % len], cyc[(start + i + 1) % len]);
    x.set(e, (i % 2 == 0) ? Rational(1) : Rational(0));
  }
}

}  // namespace

bool is_canonical(const Instance& inst, const FracSolution& x) {
  return !find_offending(inst, decompose(x)).has_value();
}

FracSolution canonicalize(const Instance& inst, const FracSolution& x) {
  if (x.n != inst.n())
    throw precondition_error("canonicalize: solution/instance size mismatch");
  FracSolution cur = x;
  cur.objective = cur.cost_against(inst);
  for (;;) {
    F2MDecomposition d = decompose(cur);
    auto off = find_offending(inst, d);
    if (!off) break;
    const Rational before = cur.objective;
    const auto& fc = d.fractional_components[off->component];
    cur.set(off->path_edge, Rational(0));
    rewire_cycle(cur, fc.half_cycles[off->cycle_a], off->path_edge.u);
    rewire_cycle(cur, fc.half_cycles[off->cycle_b], off->path_edge.v);
    cur.objective = cur.cost_against(inst);
    if (cur.objective > before)
      throw structural_error("canonicalize increased the objective");
    if (!cur.degrees_are_two())
      throw structural_error("canonicalize broke a degree constraint");
  }
  return cur;
}

}  // namespace tsp12
