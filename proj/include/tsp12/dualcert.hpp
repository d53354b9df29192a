#pragma once

#include <map>
#include <vector>

#include "tsp12/instance.hpp"
#include "tsp12/rational.hpp"
#include "tsp12/tourbuild.hpp"

namespace tsp12 {

/// Feasible dual solution of the subtour LP built from a normalized cycle
/// cover: y(i) = 1/2 off the vertex cover, y(S) = 1/2 on unmatched-side pure
/// cycles, z = 0. Its value is exactly n + r.
struct DualCertificate {
  int n = 0;
  RatVector y_node;
  std::vector<std::pair<std::vector<NodeId>, Rational>> y_set;
  std::map<Edge, Rational> z_edge;
  Rational value;
};

DualCertificate build_dual(const Instance& inst, const CycleCover& cover,
                           const MatchResult& match);

/// Checks every edge's load against its cost, exactly; returns the dual
/// objective (a certified lower bound on the subtour LP). Throws
/// structural_error naming the edge on any violated load constraint.
Rational verify_dual(const Instance& inst, const DualCertificate& cert);

}  // namespace tsp12
