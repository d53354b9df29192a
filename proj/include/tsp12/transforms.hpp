#pragma once

#include "tsp12/instance.hpp"
#include "tsp12/solution.hpp"

namespace tsp12 {

/// Joins a disconnected cost-1 graph: one new node with cost-1 edges to every
/// original node. Errors if the input is already connected.
Instance connectify(const Instance& inst);

/// Makes a connected, non-biconnected cost-1 graph biconnected: one new node
/// adjacent to every non-cut vertex. Errors if disconnected or already
/// biconnected.
Instance biconnectify(const Instance& inst);

/// Absorber-node transform: given an optimal subtour LP solution of value
/// >= n+1, adds one node adjacent (at cost 1) to every node incident on a
/// positive cost-2 edge of x.
Instance add_absorber_node(const Instance& inst, const FracSolution& x);

/// Companion rerouting: moves exactly one unit of cost-2 value through the
/// absorber node, greedily in edge order, splitting an edge if needed. The
/// result has the same objective value as x and lives on n+1 nodes.
FracSolution absorber_reroute(const Instance& inst, const FracSolution& x);

}  // namespace tsp12
