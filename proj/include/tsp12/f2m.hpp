#pragma once

#include <vector>

#include "tsp12/instance.hpp"
#include "tsp12/solution.hpp"

namespace tsp12 {

/// One fractional component of a basic F2M solution: odd half-cycles joined
/// by paths of x=1 edges.
struct FracComponent {
  std::vector<std::vector<NodeId>> half_cycles;  // each odd, x = 1/2 edges
  std::vector<std::vector<NodeId>> one_paths;    // node paths, x = 1 edges
};

struct F2MDecomposition {
  std::vector<std::vector<NodeId>> integer_cycles;  // x = 1 cycles
  std::vector<FracComponent> fractional_components;
};

/// Counting data behind the tour-construction analysis. z_eared is owned by
/// the tour builder and stays -1 until it runs.
struct F2MStats {
  int k = 0;        // number of cycle nodes
  int p = 0;        // cost-2 cycle edges
  int c_paths = 0;  // total cost of the 1-paths
  int z_eared = -1;
};

/// Splits a basic F2M solution (values in {0,1/2,1}, all degrees 2) into its
/// Balinski structure. Throws structural_error with a diagnostic naming the
/// offending component if the solution is not a vertex.
F2MDecomposition decompose(const FracSolution& x);

/// Inverse of decompose: rebuilds the edge map.
FracSolution reassemble(const F2MDecomposition& d, int n);

F2MStats f2m_stats(const Instance& inst, const F2MDecomposition& d);

/// True iff every cut of the x-weighted support graph carries weight >= 2.
bool is_two_connected(const FracSolution& x);

/// Rewires cost-1 single-edge 1-paths that join two different odd cycles
/// whose four incident cycle edges all cost 1, until none remain. The
/// objective never increases; degrees stay 2.
FracSolution canonicalize(const Instance& inst, const FracSolution& x);

/// True iff no offending 1-path (as above) exists.
bool is_canonical(const Instance& inst, const FracSolution& x);

}  // namespace tsp12
