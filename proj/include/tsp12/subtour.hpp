#pragma once

#include <optional>
#include <vector>

#include "tsp12/instance.hpp"
#include "tsp12/lp.hpp"
#include "tsp12/mincut.hpp"
#include "tsp12/solution.hpp"

namespace tsp12 {

/// Lexicographic list of the complete graph's edges on n nodes; this is the
/// LP variable order used everywhere.
std::vector<Edge> complete_edge_list(int n);
int edge_index(int n, const Edge& e);

/// Degree + bounds LP (the fractional 2-matching relaxation). The returned
/// basic solution is half-integral with objective recorded exactly.
FracSolution solve_f2m_lp(const Instance& inst, SolverConfig cfg = {});

/// Global min cut of the support graph if it is below 2, else nullopt.
/// Requires x to satisfy the degree constraints.
std::optional<CutResult> min_cut_separation(const FracSolution& x);

struct SubtourResult {
  FracSolution x;
  CutFamily cuts;
};

/// Cutting-plane solve of the subtour LP: degree + bounds, with violated
/// subtour constraints added until the separation oracle is silent.
SubtourResult solve_subtour_lp(const Instance& inst, SolverConfig cfg = {});

struct TspIpResult {
  int cost = 0;
  Tour tour;
  CutFamily cuts;
};

struct BranchBoundConfig {
  SolverConfig solver;
  std::int64_t node_budget = 1'000'000;
  // When set, fractional branch variables are picked at random (used by the
  // branching-order replay tests); the optimum must not change.
  unsigned shuffle_seed = 0;
  bool shuffle = false;
};

/// Exact TSP optimum by branch-and-bound over the subtour LP with
/// integral-connectivity cuts. Cross-checked against held_karp_opt in tests.
TspIpResult solve_tsp_ip(const Instance& inst, BranchBoundConfig cfg = {});

struct TwoMatching {
  int cost = 0;
  std::vector<std::vector<NodeId>> cycles;
};

/// Minimum-cost integer 2-matching (node-disjoint cycle cover, cycles of
/// length >= 3) by branch-and-bound over the F2M LP.
TwoMatching solve_min_2m(const Instance& inst, BranchBoundConfig cfg = {});

/// Exhaustive check of every subtour constraint (all 2^n node subsets with
/// 3 <= |S| <= n-3). Returns a violated set if one exists. Guarded to n <= 20.
std::optional<std::vector<NodeId>> violated_subtour_cut_exhaustive(const FracSolution& x);

}  // namespace tsp12
