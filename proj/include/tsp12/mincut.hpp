#pragma once

#include <vector>

#include "tsp12/rational.hpp"
#include "tsp12/solution.hpp"

namespace tsp12 {

struct CutResult {
  std::vector<NodeId> side;  // sorted; the smaller side, ties toward node 0
  Rational value;
};

/// Global minimum cut of the x-weighted support graph (Stoer-Wagner,
/// exact arithmetic). Requires n >= 2. Disconnected supports yield value 0.
CutResult stoer_wagner_min_cut(const FracSolution& x);

/// Every cut-of-the-phase observed in one Stoer-Wagner run whose value is
/// strictly below `threshold`, deduplicated and normalized.
std::vector<CutResult> phase_cuts_below(const FracSolution& x, const Rational& threshold);

}  // namespace tsp12
