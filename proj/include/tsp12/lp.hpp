#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tsp12/errors.hpp"
#include "tsp12/rational.hpp"

namespace tsp12 {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Minimize, Maximize };
enum class SolveStatus { Optimal, Infeasible, Unbounded };
enum class PivotRule { Bland, LargestCoefficient };

/// One-sided bounds are expressed with nullopt (unbounded in that direction).
struct VarBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// A constraint row, dense over the structural variables.
struct Row {
  RatVector coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs;
};

struct LinearProgram {
  Sense sense = Sense::Minimize;
  RatVector objective;           // one entry per structural variable
  std::vector<VarBounds> bounds; // same length as objective
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  void check_well_formed() const;
};

/// Identifies how a variable sits in the returned basis.
enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

struct BasicSolution {
  SolveStatus status = SolveStatus::Infeasible;
  RatVector values;    // structural variable values (valid when Optimal)
  Rational objective;  // in the LP's own sense
  std::vector<VarStatus> var_status;  // structural variables
  std::vector<VarStatus> row_status;  // slack of each row
  RatVector reduced_costs;            // structural, sign-certified at optimality
  RatVector row_duals;                // one multiplier per row

  bool optimal() const { return status == SolveStatus::Optimal; }
};

struct SolverConfig {
  PivotRule rule = PivotRule::Bland;
  // Exceeding the budget is a hard error (budget_error), never silent.
  std::int64_t pivot_budget = 2'000'000;
};

/// Bounded-variable primal/dual simplex over exact rationals.
///
/// A solver is a single-use, single-threaded object. The tableau is dense
/// (Eigen matrices of Rational); at this project's scale (tens of variables)
/// that is the right trade-off.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram lp, SolverConfig cfg = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  /// Two-phase primal solve from scratch.
  SolveStatus solve();

  /// Appends a row; the previous basis stays dual feasible, so the solver
  /// reoptimizes with the dual simplex. Requires a prior optimal solve.
  SolveStatus add_row_and_reoptimize(const Row& row);

  /// Tightens/changes bounds of one structural variable and reoptimizes
  /// (dual simplex). Requires a prior optimal solve.
  SolveStatus set_bounds_and_reoptimize(int var, std::optional<Rational> lower,
                                        std::optional<Rational> upper);

  /// Snapshot of the current optimal solution.
  BasicSolution solution() const;

  /// Deep copy, including tableau state (used by branch-and-bound).
  SimplexSolver clone() const;

  std::int64_t pivots_used() const;

 private:
  struct Impl;
  explicit SimplexSolver(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Solves from scratch and returns the basic solution.
BasicSolution simplex_solve(const LinearProgram& lp, SolverConfig cfg = {});

/// Appends `row` to `lp`, warm-starts from `sol`'s basis and reoptimizes.
/// Equivalent to solving the extended LP from scratch.
BasicSolution add_row_and_resolve(const LinearProgram& lp, const BasicSolution& sol,
                                  const Row& row, SolverConfig cfg = {});

}  // namespace tsp12
