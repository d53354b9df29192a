#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tsp12/instance.hpp"
#include "tsp12/rational.hpp"

namespace tsp12 {

/// Fractional edge solution over the complete graph on n nodes; edges absent
/// from the map carry value 0.
struct FracSolution {
  int n = 0;
  std::map<Edge, Rational> x;
  Rational objective;

  Rational value(const Edge& e) const {
    auto it = x.find(e);
    return it == x.end() ? Rational(0) : it->second;
  }
  void set(const Edge& e, const Rational& v) {
    if (v == 0) x.erase(e);
    else x[e] = v;
  }

  Rational degree(NodeId v) const;
  bool degrees_are_two() const;
  /// Values all in {0, 1/2, 1}.
  bool is_half_integral() const;
  bool is_integral() const;
  /// Sum of x over edges with exactly one endpoint in `mask`.
  Rational cut_value(std::uint32_t mask) const;
  /// Exact cost against an instance.
  Rational cost_against(const Instance& inst) const;

  bool operator==(const FracSolution&) const = default;
};

/// Subtour-elimination sets generated during a cutting-plane run; each was
/// violated when recorded.
using CutFamily = std::vector<std::vector<NodeId>>;

}  // namespace tsp12
