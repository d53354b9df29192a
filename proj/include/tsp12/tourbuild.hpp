#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsp12/f2m.hpp"
#include "tsp12/instance.hpp"
#include "tsp12/solution.hpp"

namespace tsp12 {

/// Acyclic spanning subgraph with all degrees <= 2. Nodes of degree 0 are
/// permitted transiently during construction.
class PartialTour {
 public:
  explicit PartialTour(int n);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(NodeId v) const { return deg_[v]; }
  /// True iff both endpoints have degree < 2 and joining them closes no cycle.
  bool can_add(const Edge& e) const;
  void add(const Edge& e);  // throws precondition_error if !can_add
  void remove(const Edge& e);
  /// Endpoint of the path containing v farthest from v (v itself if isolated).
  NodeId path_other_end(NodeId v) const;
  bool same_component(NodeId a, NodeId b) const;
  int degree_one_count() const;
  int cost(const Instance& inst) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> deg_;
  std::vector<std::vector<NodeId>> adj_;
};

/// Path or odd cycle handed to the Lemma-1 style augmentation. Consecutive
/// nodes are the edges; a cycle closes back to the front.
struct AugmentSet {
  std::vector<NodeId> nodes;
  bool is_cycle = false;

  int edge_count() const {
    return is_cycle ? static_cast<int>(nodes.size())
                    : static_cast<int>(nodes.size()) - 1;
  }
};

/// Picks A' within A so that T plus A' stays a partial tour, adding at least
/// |A|/3 edges for odd cycles and (|A|-1)/3 for paths. Every node of A must
/// have degree exactly 1 in T.
std::vector<Edge> augment(const PartialTour& T, const AugmentSet& A);

/// Joins the paths of a spanning partial tour into a tour; the added closing
/// edges cost at most 2 each, so the tour costs at most c(T) + d.
Tour complete_partial_tour(const Instance& inst, const PartialTour& T);

struct CycleCover {
  std::vector<std::vector<NodeId>> cycles;
  int cost = 0;
  std::vector<bool> pure;  // per cycle: every edge costs 1
};

CycleCover make_cycle_cover(const Instance& inst,
                            const std::vector<std::vector<NodeId>>& cycles);

/// Per-run accounting of the fractional-component tour construction; the
/// quantities mirror the counting argument the bounds rest on.
struct BuildReport {
  F2MStats stats;            // k, p, c_paths, z_eared (filled here)
  int r_edges_initial = 0;   // edges of R before preprocessing
  int r_edges_added = 0;     // edges of R placed into T overall
  int deg1_at_completion = 0;
  int preproc_success = 0;
  int preproc_candidates = 0;  // non-eared paths with |A| = 1 mod 3
  std::vector<std::string> trace;
};

/// Tour from a connected fractional F2M vertex, of cost at most 7/6 times
/// the cost of x (exact rationals). Integral or disconnected inputs are
/// rejected; use stitch_cycles for covers.
Tour build_tour_76(const Instance& inst, const FracSolution& x,
                   BuildReport* report = nullptr);

/// Same construction with the stronger guarantee available for 2-connected
/// canonical vertices: no eared paths arise and the tour costs at most 10/9
/// times the cost of x.
Tour build_tour_109_check(const Instance& inst, const FracSolution& x,
                          BuildReport* report = nullptr);

/// Driver for arbitrary F2M vertices: integer cycles are kept, every
/// fractional component is converted by the 7/6 construction, and the
/// resulting cover is stitched into a tour.
Tour build_tour_from_f2m(const Instance& inst, const FracSolution& x);

/// Removes the most expensive edge of each cycle and chains the resulting
/// paths; the tour costs at most cover.cost - sum(max edges) + 2 * #cycles
/// and at most 4/3 of the cover cost.
Tour stitch_cycles(const Instance& inst, const CycleCover& cover);

/// Merges cycles until at most one cycle carries cost-2 edges and no node of
/// that cycle incident to a cost-2 cycle edge has a cost-1 edge into a pure
/// cycle. The cost never increases.
CycleCover normalize_2m(const Instance& inst, const CycleCover& cover);

struct MatchResult {
  // One entry per pure cycle on the bipartite left side: matched node or -1.
  std::vector<int> left_cycles;        // indices into cover.cycles
  std::vector<NodeId> matched_node;    // parallel to left_cycles
  int r = 0;                           // unmatched pure cycles
  std::vector<int> cover_cycles;       // C_M, indices into cover.cycles
  std::vector<NodeId> cover_nodes;     // V_M
};

/// The pure-cycle-to-node bipartite matching with its Koenig vertex cover.
/// A pure cycle spanning every node needs no patching and is exempt from the
/// bipartite instance. Requires a normalized cover.
MatchResult pure_cycle_matching(const Instance& inst, const CycleCover& cover);

bool cover_is_normalized(const Instance& inst, const CycleCover& cover);

}  // namespace tsp12
