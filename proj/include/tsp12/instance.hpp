#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "tsp12/errors.hpp"

namespace tsp12 {

using NodeId = int;  // 0-based node index

/// Unordered pair of distinct nodes, normalized to u < v.
struct Edge {
  NodeId u = 0, v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) {
    if (a == b) throw structural_error("self-loop edge");
    u = a < b ? a : b;
    v = a < b ? b : a;
  }
  auto operator<=>(const Edge&) const = default;
};

/// A 1,2-TSP instance: the graph of cost-1 edges on n nodes. Every absent
/// edge costs 2; the complete graph is never materialized.
class Instance {
 public:
  Instance(int n, std::vector<Edge> one_edges);

  int n() const { return n_; }
  const std::vector<Edge>& ones() const { return ones_; }

  bool has_one(NodeId a, NodeId b) const {
    return (adj_[a] >> b) & 1u;
  }
  int cost(const Edge& e) const;
  std::uint32_t neighbors_mask(NodeId v) const { return adj_[v]; }
  int degree(NodeId v) const;

  bool operator==(const Instance&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> ones_;           // sorted, deduplicated
  std::vector<std::uint32_t> adj_;   // cost-1 adjacency bitmask per node
};

struct Tour {
  std::vector<NodeId> order;  // permutation of 0..n-1
  int cost = 0;
};

/// Exact tour cost of `order` under `inst`, with wraparound.
int tour_cost(const Instance& inst, const std::vector<NodeId>& order);

/// Throws structural_error unless t is a Hamiltonian tour of inst with an
/// exactly recomputed cost.
void validate_tour(const Instance& inst, const Tour& t);

/// Exact optimum by bitmask dynamic programming (3 <= n <= 18). Ties are
/// broken toward the lexicographically smallest tour starting at node 0.
Tour held_karp_opt(const Instance& inst);

bool is_connected(const Instance& inst);
bool is_biconnected(const Instance& inst);
/// Cut vertices of the cost-1 graph.
std::vector<NodeId> articulation_points(const Instance& inst);
/// Connected components of the cost-1 graph, each sorted.
std::vector<std::vector<NodeId>> connected_components(const Instance& inst);

}  // namespace tsp12
