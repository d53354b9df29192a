#pragma once

#include <stdexcept>
#include <string>

namespace tsp12 {

// Error taxonomy mirrored by the CLI exit codes:
//   2 = precondition / infeasible input, 3 = structural violation,
//   4 = pivot or node budget exhausted.

struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

struct structural_error : std::runtime_error {
  explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsp12
