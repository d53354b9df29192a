#include "tsp12/instance.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string>

namespace tsp12 {

Instance::Instance(int n, std::vector<Edge> one_edges) : n_(n) {
  if (n < 1 || n > 31) throw precondition_error("instance node count out of range");
  for (const Edge& e : one_edges) {
    if (e.u < 0 || e.v >= n)
      throw structural_error("edge endpoint out of range: " + std::to_string(e.u) +
                             "-" + std::to_string(e.v));
  }
  std::sort(one_edges.begin(), one_edges.end());
  one_edges.erase(std::unique(one_edges.begin(), one_edges.end()), one_edges.end());
  ones_ = std::move(one_edges);
  adj_.assign(n_, 0);
  for (const Edge& e : ones_) {
    adj_[e.u] |= 1u << e.v;
    adj_[e.v] |= 1u << e.u;
  }
}

int Instance::cost(const Edge& e) const {
  if (e.u < 0 || e.v >= n_) throw precondition_error("edge endpoint out of range");
  return has_one(e.u, e.v) ? 1 : 2;
}

int Instance::degree(NodeId v) const {
  return std::popcount(adj_[v]);
}

int tour_cost(const Instance& inst, const std::vector<NodeId>& order) {
  const int n = static_cast<int>(order.size());
  int c = 0;
  for (int i = 0; i < n; ++i) {
    NodeId a = order[i], b = order[(i + 1) % n];
    c += inst.has_one(a, b) ? 1 : 2;
  }
  return c;
}

void validate_tour(const Instance& inst, const Tour& t) {
  const int n = inst.n();
  if (n < 3) throw structural_error("tour requires n >= 3");
  if (static_cast<int>(t.order.size()) != n)
    throw structural_error("tour order length != n");
  std::vector<bool> seen(n, false);
  for (NodeId v : t.order) {
    if (v < 0 || v >= n || seen[v]) throw structural_error("tour is not a permutation");
    seen[v] = true;
  }
  const int c = tour_cost(inst, t.order);
  if (c != t.cost)
    throw structural_error("tour cost mismatch: recorded " + std::to_string(t.cost) +
                           ", recomputed " + std::to_string(c));
}

Tour held_karp_opt(const Instance& inst) {
  const int n = inst.n();
  if (n < 3 || n > 18) throw precondition_error("held_karp_opt supports 3 <= n <= 18");

  // b[mask][v]: cheapest way to leave v, visit everything outside mask, and
  // return to node 0. mask always contains node 0 and v.
  const std::uint32_t full = (n == 31) ? ~0u : ((1u << n) - 1);
  const std::int32_t INF = INT32_MAX / 4;
  std::vector<std::int32_t> b(static_cast<std::size_t>(1u << n) * n, INF);
  auto at = [&](std::uint32_t mask, int v) -> std::int32_t& {
    return b[static_cast<std::size_t>(mask) * n + v];
  };
  auto edge_cost = [&](int a, int c) { return inst.has_one(a, c) ? 1 : 2; };

  for (int v = 0; v < n; ++v) at(full, v) = edge_cost(v, 0);
  for (std::uint32_t mask = full - 1; mask >= 1; --mask) {
    if (!(mask & 1u)) continue;
    for (int v = 0; v < n; ++v) {
      if (!(mask & (1u << v))) continue;
      std::int32_t best = INF;
      for (int w = 0; w < n; ++w) {
        if (mask & (1u << w)) continue;
        const std::int32_t cand = edge_cost(v, w) + at(mask | (1u << w), w);
        if (cand < best) best = cand;
      }
      at(mask, v) = best;
    }
    if (mask == 1u) break;
  }

  Tour t;
  t.cost = at(1u, 0);
  t.order.reserve(n);
  t.order.push_back(0);
  std::uint32_t mask = 1u;
  int v = 0;
  while (static_cast<int>(t.order.size()) < n) {
    for (int w = 0; w < n; ++w) {
      if (mask & (1u << w)) continue;
      if (edge_cost(v, w) + at(mask | (1u << w), w) == at(mask, v)) {
        t.order.push_back(w);
        mask |= 1u << w;
        v = w;
        break;
      }
    }
  }
  return t;
}

namespace {

struct DfsState {
  const Instance& g;
  std::vector<int> disc, low;
  std::vector<bool> is_cut;
  int timer = 0;

  explicit DfsState(const Instance& inst)
      : g(inst), disc(inst.n(), -1), low(inst.n(), 0), is_cut(inst.n(), false) {}

  void run(int u, int parent) {
    disc[u] = low[u] = timer++;
    int children = 0;
    std::uint32_t nb = g.neighbors_mask(u);
    while (nb) {
      const int v = std::countr_zero(nb);
      nb &= nb - 1;
      if (v == parent) continue;
      if (disc[v] >= 0) {
        low[u] = std::min(low[u], disc[v]);
        continue;
      }
      ++children;
      run(v, u);
      low[u] = std::min(low[u], low[v]);
      if (parent >= 0 && low[v] >= disc[u]) is_cut[u] = true;
    }
    if (parent < 0 && children > 1) is_cut[u] = true;
  }
};

}  // namespace

bool is_connected(const Instance& inst) {
  const int n = inst.n();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    std::uint32_t nb = inst.neighbors_mask(u);
    while (nb) {
      int v = std::countr_zero(nb);
      nb &= nb - 1;
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

std::vector<std::vector<NodeId>> connected_components(const Instance& inst) {
  const int n = inst.n();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      std::uint32_t nb = inst.neighbors_mask(u);
      while (nb) {
        int v = std::countr_zero(nb);
        nb &= nb - 1;
        if (comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::vector<NodeId>> out(ncomp);
  for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
  return out;
}

std::vector<NodeId> articulation_points(const Instance& inst) {
  DfsState st(inst);
  for (int v = 0; v < inst.n(); ++v)
    if (st.disc[v] < 0) st.run(v, -1);
  std::vector<NodeId> out;
  for (int v = 0; v < inst.n(); ++v)
    if (st.is_cut[v]) out.push_back(v);
  return out;
}

bool is_biconnected(const Instance& inst) {
  if (!is_connected(inst)) return false;
  return articulation_points(inst).empty();
}

}  // namespace tsp12
