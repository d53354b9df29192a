#include "tsp12/lp.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <utility>

namespace tsp12 {

void LinearProgram::check_well_formed() const {
  const int n = num_vars();
  if (n == 0) throw precondition_error("LP has no variables");
  if (static_cast<int>(bounds.size()) != n)
    throw precondition_error("LP bounds/objective size mismatch");
  for (const auto& b : bounds) {
    if (b.lower && b.upper && *b.lower > *b.upper)
      throw precondition_error("LP variable with empty bound interval");
  }
  for (const auto& r : rows) {
    if (static_cast<int>(r.coeffs.size()) != n)
      throw precondition_error("LP row dimension mismatch");
  }
}

namespace {

enum class ColKind : std::uint8_t { Structural, Slack, Artificial };

struct Column {
  ColKind kind = ColKind::Structural;
  std::optional<Rational> lo, up;
  bool fixed() const { return lo && up && *lo == *up; }
};

}  // namespace

struct SimplexSolver::Impl {
  SolverConfig cfg;
  Sense sense = Sense::Minimize;
  int n0 = 0;                 // structural variable count
  RatVector obj;              // original objective over structural vars

  // Tableau state. tab == B^{-1}A over all live columns; column j of the
  // original constraint matrix is recoverable only for slack-free rebuilds,
  // which the free functions do from the LinearProgram itself.
  RatMatrix tab;              // m x ncols
  std::vector<Column> cols;
  std::vector<int> basis;     // per row: basic column
  std::vector<VarStatus> stat;
  RatVector xb;               // values of basic variables, per row
  RatVector d;                // reduced costs w.r.t. current phase costs
  RatVector phase_cost;       // current phase costs over columns
  std::int64_t pivots = 0;
  bool solved_optimal = false;

  int m() const { return static_cast<int>(basis.size()); }
  int ncols() const { return static_cast<int>(cols.size()); }

  Rational nonbasic_value(int j) const {
    switch (stat[j]) {
      case VarStatus::AtLower: return *cols[j].lo;
      case VarStatus::AtUpper: return *cols[j].up;
      case VarStatus::FreeZero: return Rational(0);
      case VarStatus::Basic: break;
    }
    throw structural_error("nonbasic_value called on basic column");
  }

  Rational value_of(int j) const {
    if (stat[j] == VarStatus::Basic) {
      for (int i = 0; i < m(); ++i)
        if (basis[i] == j) return xb(i);
      throw structural_error("basic column missing from basis");
    }
    return nonbasic_value(j);
  }

  void charge_pivot() {
    if (++pivots > cfg.pivot_budget)
      throw budget_error("simplex pivot budget exhausted (" +
                         std::to_string(cfg.pivot_budget) + ")");
  }

  // Gaussian pivot on (row r, column j); updates tab, d.
  void eliminate(int r, int j) {
    const Rational piv = tab(r, j);
    assert(piv != 0);
    const int nc = ncols();
    if (piv != 1) {
      const Rational inv = Rational(1) / piv;
      for (int c = 0; c < nc; ++c)
        if (tab(r, c) != 0) tab(r, c) *= inv;
    }
    for (int i = 0; i < m(); ++i) {
      if (i == r) continue;
      const Rational f = tab(i, j);
      if (f == 0) continue;
      for (int c = 0; c < nc; ++c)
        if (tab(r, c) != 0) tab(i, c) -= f * tab(r, c);
      tab(i, j) = 0;  // exact, but keep it tidy against reuse
    }
    const Rational fd = d(j);
    if (fd != 0) {
      for (int c = 0; c < nc; ++c)
        if (tab(r, c) != 0) d(c) -= fd * tab(r, c);
      d(j) = 0;
    }
  }

  // Moves the current point along the entering column: x_j += sigma * t.
  void shift_point(int j, int sigma, const Rational& t) {
    if (t == 0) return;
    const Rational step = Rational(sigma) * t;
    for (int i = 0; i < m(); ++i)
      if (tab(i, j) != 0) xb(i) -= tab(i, j) * step;
  }

  // ----- primal simplex ---------------------------------------------------

  // Returns entering column and direction, or {-1, 0} at optimality.
  std::pair<int, int> choose_entering() const {
    int best = -1, best_sigma = 0;
    Rational best_mag;
    for (int j = 0; j < ncols(); ++j) {
      if (stat[j] == VarStatus::Basic || cols[j].fixed()) continue;
      int sigma = 0;
      if (stat[j] == VarStatus::AtLower) {
        if (d(j) < 0) sigma = 1;
      } else if (stat[j] == VarStatus::AtUpper) {
        if (d(j) > 0) sigma = -1;
      } else {  // FreeZero
        if (d(j) < 0) sigma = 1;
        else if (d(j) > 0) sigma = -1;
      }
      if (sigma == 0) continue;
      if (cfg.rule == PivotRule::Bland) return {j, sigma};
      Rational mag = d(j) < 0 ? -d(j) : d(j);
      if (best < 0 || mag > best_mag) {
        best = j; best_sigma = sigma; best_mag = mag;
      }
    }
    return {best, best_sigma};
  }

  SolveStatus primal_loop() {
    for (;;) {
      auto [j, sigma] = choose_entering();
      if (j < 0) return SolveStatus::Optimal;
      charge_pivot();

      // Ratio test: largest step t >= 0 keeping all basics within bounds.
      bool has_limit = false;
      Rational t_best;
      int leave_row = -1;  // -1 with has_limit means a bound flip of j
      bool leave_to_upper = false;
      if (cols[j].lo && cols[j].up) {
        t_best = *cols[j].up - *cols[j].lo;
        has_limit = true;
      }
      for (int i = 0; i < m(); ++i) {
        const Rational& w = tab(i, j);
        if (w == 0) continue;
        const Rational delta = Rational(-sigma) * w;  // d x_B(i) / dt
        const Column& bc = cols[basis[i]];
        std::optional<Rational> ti;
        bool to_upper = false;
        if (delta > 0) {
          if (bc.up) { ti = (*bc.up - xb(i)) / delta; to_upper = true; }
        } else {
          if (bc.lo) { ti = (xb(i) - *bc.lo) / (-delta); }
        }
        if (!ti) continue;
        // Bland: among ties prefer the smallest leaving variable index.
        bool take = !has_limit || *ti < t_best ||
                    (*ti == t_best && leave_row >= 0 && basis[i] < basis[leave_row]);
        if (take) {
          t_best = *ti;
          leave_row = i;
          leave_to_upper = to_upper;
          has_limit = true;
        }
      }
      if (!has_limit) return SolveStatus::Unbounded;

      if (leave_row < 0) {
        // Bound flip of the entering variable.
        shift_point(j, sigma, t_best);
        stat[j] = (stat[j] == VarStatus::AtLower) ? VarStatus::AtUpper
                                                  : VarStatus::AtLower;
        continue;
      }
      const Rational enter_val = nonbasic_value(j) + Rational(sigma) * t_best;
      shift_point(j, sigma, t_best);
      const int leaving = basis[leave_row];
      stat[leaving] = leave_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
      eliminate(leave_row, j);
      basis[leave_row] = j;
      stat[j] = VarStatus::Basic;
      xb(leave_row) = enter_val;
    }
  }

  // ----- dual simplex -----------------------------------------------------

  SolveStatus dual_loop() {
    for (;;) {
      // Leaving row: Bland-style, smallest basic column index among violators.
      int r = -1;
      bool below = false;
      for (int i = 0; i < m(); ++i) {
        const Column& bc = cols[basis[i]];
        bool viol_below = bc.lo && xb(i) < *bc.lo;
        bool viol_above = bc.up && xb(i) > *bc.up;
        if (!viol_below && !viol_above) continue;
        if (r < 0 || basis[i] < basis[r]) { r = i; below = viol_below; }
      }
      if (r < 0) return SolveStatus::Optimal;
      charge_pivot();

      // Entering column: dual ratio test |d_j| / |T(r,j)| minimal.
      int best = -1;
      Rational best_ratio;
      for (int j = 0; j < ncols(); ++j) {
        if (stat[j] == VarStatus::Basic || cols[j].fixed()) continue;
        const Rational& w = tab(r, j);
        if (w == 0) continue;
        bool ok = false;
        if (stat[j] == VarStatus::AtLower) ok = below ? (w < 0) : (w > 0);
        else if (stat[j] == VarStatus::AtUpper) ok = below ? (w > 0) : (w < 0);
        else ok = true;  // FreeZero moves either way
        if (!ok) continue;
        Rational ratio = d(j) / w;
        if (ratio < 0) ratio = -ratio;
        if (best < 0 || ratio < best_ratio ||
            (ratio == best_ratio && j < best)) {
          best = j; best_ratio = ratio;
        }
      }
      if (best < 0) return SolveStatus::Infeasible;

      const int j = best;
      const Rational target = below ? *cols[basis[r]].lo : *cols[basis[r]].up;
      const Rational delta_j = (xb(r) - target) / tab(r, j);
      const Rational enter_val = nonbasic_value(j) + delta_j;
      const int sigma = delta_j >= 0 ? 1 : -1;
      shift_point(j, sigma, sigma > 0 ? delta_j : -delta_j);
      const int leaving = basis[r];
      stat[leaving] = below ? VarStatus::AtLower : VarStatus::AtUpper;
      eliminate(r, j);
      basis[r] = j;
      stat[j] = VarStatus::Basic;
      xb(r) = enter_val;
    }
  }

  // ----- setup ------------------------------------------------------------

  static VarStatus initial_status(const Column& c) {
    if (c.lo) return VarStatus::AtLower;
    if (c.up) return VarStatus::AtUpper;
    return VarStatus::FreeZero;
  }

  void build(const LinearProgram& lp) {
    lp.check_well_formed();
    sense = lp.sense;
    n0 = lp.num_vars();
    obj = lp.objective;
    const int nrows = static_cast<int>(lp.rows.size());
    cols.clear();
    cols.reserve(n0 + nrows);
    for (int j = 0; j < n0; ++j)
      cols.push_back({ColKind::Structural, lp.bounds[j].lower, lp.bounds[j].upper});
    for (const auto& row : lp.rows) {
      Column s;
      s.kind = ColKind::Slack;
      switch (row.rel) {
        case Relation::LessEq:    s.lo = Rational(0); break;
        case Relation::GreaterEq: s.up = Rational(0); break;
        case Relation::Equal:     s.lo = Rational(0); s.up = Rational(0); break;
      }
      cols.push_back(s);
    }
    tab = RatMatrix::Zero(nrows, n0 + nrows);
    for (int i = 0; i < nrows; ++i) {
      for (int j = 0; j < n0; ++j) tab(i, j) = lp.rows[i].coeffs(j);
      tab(i, n0 + i) = 1;
    }
    basis.assign(nrows, -1);
    stat.assign(cols.size(), VarStatus::AtLower);
    for (int j = 0; j < ncols(); ++j) stat[j] = initial_status(cols[j]);
    xb = RatVector::Zero(nrows);
    solved_optimal = false;

    // Residuals at the all-at-bounds point decide who starts basic.
    std::vector<int> needs_artificial;
    RatVector resid(nrows);
    for (int i = 0; i < nrows; ++i) {
      Rational r = lp.rows[i].rhs;
      for (int j = 0; j < ncols(); ++j) {
        if (tab(i, j) == 0 || stat[j] == VarStatus::Basic) continue;
        const Rational v = nonbasic_value(j);
        if (v != 0) r -= tab(i, j) * v;
      }
      resid(i) = r;
      const Column& s = cols[n0 + i];
      const bool slack_can = (!s.lo || r >= *s.lo) && (!s.up || r <= *s.up);
      if (slack_can) {
        basis[i] = n0 + i;
        stat[n0 + i] = VarStatus::Basic;
        xb(i) = r;
      } else {
        needs_artificial.push_back(i);
      }
    }
    if (!needs_artificial.empty()) {
      const int base = ncols();
      tab.conservativeResize(nrows, base + static_cast<int>(needs_artificial.size()));
      for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
        const int i = needs_artificial[k];
        const int cidx = base + static_cast<int>(k);
        Column a;
        a.kind = ColKind::Artificial;
        if (resid(i) >= 0) a.lo = Rational(0);
        else a.up = Rational(0);
        cols.push_back(a);
        tab.col(cidx).setZero();
        tab(i, cidx) = 1;
        basis[i] = cidx;
        stat.push_back(VarStatus::Basic);
        xb(i) = resid(i);
      }
    }
  }

  void set_phase_costs(bool phase1) {
    phase_cost = RatVector::Zero(ncols());
    if (phase1) {
      for (int j = 0; j < ncols(); ++j) {
        if (cols[j].kind != ColKind::Artificial) continue;
        phase_cost(j) = cols[j].lo ? Rational(1) : Rational(-1);
      }
    } else {
      for (int j = 0; j < n0 && j < ncols(); ++j)
        phase_cost(j) = sense == Sense::Minimize ? obj(j) : -obj(j);
    }
    recompute_reduced_costs();
  }

  void recompute_reduced_costs() {
    d = phase_cost;
    for (int i = 0; i < m(); ++i) {
      const Rational cb = phase_cost(basis[i]);
      if (cb == 0) continue;
      for (int c = 0; c < ncols(); ++c)
        if (tab(i, c) != 0) d(c) -= cb * tab(i, c);
    }
  }

  // Drives basic artificials out (degenerate in-place pivots), then drops
  // all artificial columns from the tableau.
  void retire_artificials() {
    for (int i = 0; i < m(); ++i) {
      if (cols[basis[i]].kind != ColKind::Artificial) continue;
      if (xb(i) != 0)
        throw structural_error("artificial basic at nonzero value after phase 1");
      int j = -1;
      for (int c = 0; c < ncols(); ++c) {
        if (cols[c].kind == ColKind::Artificial) continue;
        if (stat[c] == VarStatus::Basic) continue;
        if (tab(i, c) != 0) { j = c; break; }
      }
      if (j < 0)
        throw structural_error("redundant constraint row discovered in phase 1");
      const Rational v = nonbasic_value(j);
      const int leaving = basis[i];
      eliminate(i, j);
      stat[leaving] = cols[leaving].lo ? VarStatus::AtLower : VarStatus::AtUpper;
      basis[i] = j;
      stat[j] = VarStatus::Basic;
      xb(i) = v;  // the point does not move: j stays at its bound value
    }
    int keep = 0;
    for (int c = 0; c < ncols(); ++c)
      if (cols[c].kind != ColKind::Artificial) ++keep;
    if (keep == ncols()) return;
    RatMatrix nt(m(), keep);
    std::vector<Column> ncolv;
    ncolv.reserve(keep);
    std::vector<VarStatus> nstat;
    nstat.reserve(keep);
    std::vector<int> remap(ncols(), -1);
    int out = 0;
    for (int c = 0; c < ncols(); ++c) {
      if (cols[c].kind == ColKind::Artificial) continue;
      remap[c] = out;
      nt.col(out) = tab.col(c);
      ncolv.push_back(cols[c]);
      nstat.push_back(stat[c]);
      ++out;
    }
    for (int i = 0; i < m(); ++i) {
      basis[i] = remap[basis[i]];
      assert(basis[i] >= 0);
    }
    tab = std::move(nt);
    cols = std::move(ncolv);
    stat = std::move(nstat);
  }

  SolveStatus run_two_phase() {
    bool have_artificial = false;
    for (const auto& c : cols)
      if (c.kind == ColKind::Artificial) { have_artificial = true; break; }
    if (have_artificial) {
      set_phase_costs(true);
      SolveStatus s = primal_loop();
      if (s == SolveStatus::Unbounded)
        throw structural_error("phase-1 objective unbounded");
      Rational infeas = 0;
      for (int j = 0; j < ncols(); ++j) {
        if (cols[j].kind != ColKind::Artificial) continue;
        Rational v = value_of(j);
        infeas += v < 0 ? -v : v;
      }
      if (infeas != 0) return SolveStatus::Infeasible;
      retire_artificials();
    }
    set_phase_costs(false);
    SolveStatus s = primal_loop();
    solved_optimal = (s == SolveStatus::Optimal);
    return s;
  }

  bool primal_feasible() const {
    for (int i = 0; i < m(); ++i) {
      const Column& bc = cols[basis[i]];
      if (bc.lo && xb(i) < *bc.lo) return false;
      if (bc.up && xb(i) > *bc.up) return false;
    }
    return true;
  }

  BasicSolution snapshot(SolveStatus status) const {
    BasicSolution out;
    out.status = status;
    if (status != SolveStatus::Optimal) return out;
    out.values = RatVector::Zero(n0);
    for (int j = 0; j < n0; ++j) out.values(j) = value_of(j);
    out.objective = 0;
    for (int j = 0; j < n0; ++j)
      if (obj(j) != 0) out.objective += obj(j) * out.values(j);
    out.var_status.assign(stat.begin(), stat.begin() + n0);
    out.row_status.resize(m());
    for (int i = 0; i < m(); ++i) out.row_status[i] = stat[n0 + i];
    const int flip = sense == Sense::Minimize ? 1 : -1;
    out.reduced_costs = RatVector::Zero(n0);
    for (int j = 0; j < n0; ++j) out.reduced_costs(j) = Rational(flip) * d(j);
    out.row_duals = RatVector::Zero(m());
    for (int i = 0; i < m(); ++i)
      out.row_duals(i) = Rational(-flip) * d(n0 + i);
    return out;
  }
};

SimplexSolver::SimplexSolver(LinearProgram lp, SolverConfig cfg)
    : impl_(std::make_unique<Impl>()) {
  impl_->cfg = cfg;
  impl_->build(lp);
}

SimplexSolver::SimplexSolver(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

SolveStatus SimplexSolver::solve() { return impl_->run_two_phase(); }

SolveStatus SimplexSolver::add_row_and_reoptimize(const Row& row) {
  Impl& im = *impl_;
  if (!im.solved_optimal)
    throw precondition_error("add_row_and_reoptimize requires an optimal basis");
  if (static_cast<int>(row.coeffs.size()) != im.n0)
    throw precondition_error("row dimension mismatch");

  // Express the new row in the current basis and give it a basic slack.
  const int nc = im.ncols();
  RatVector newrow = RatVector::Zero(nc + 1);
  for (int j = 0; j < im.n0; ++j) newrow(j) = row.coeffs(j);
  for (int i = 0; i < im.m(); ++i) {
    const Rational f = newrow(im.basis[i]);
    if (f == 0) continue;
    for (int c = 0; c < nc; ++c)
      if (im.tab(i, c) != 0) newrow(c) -= f * im.tab(i, c);
    newrow(im.basis[i]) = 0;
  }
  newrow(nc) = 1;

  Column s;
  s.kind = ColKind::Slack;
  switch (row.rel) {
    case Relation::LessEq:    s.lo = Rational(0); break;
    case Relation::GreaterEq: s.up = Rational(0); break;
    case Relation::Equal:     s.lo = Rational(0); s.up = Rational(0); break;
  }
  // Slack value at the current point: s = rhs - a.x.
  Rational sval = row.rhs;
  for (int j = 0; j < im.n0; ++j)
    if (row.coeffs(j) != 0) sval -= row.coeffs(j) * im.value_of(j);

  im.tab.conservativeResize(im.m() + 1, nc + 1);
  im.tab.row(im.m()).setZero();
  im.tab.col(nc).setZero();
  for (int c = 0; c <= nc; ++c) im.tab(im.m(), c) = newrow(c);
  im.cols.push_back(s);
  im.stat.push_back(VarStatus::Basic);
  im.basis.push_back(nc);
  im.xb.conservativeResize(im.m());
  im.xb(im.m() - 1) = sval;
  im.d.conservativeResize(nc + 1);
  im.d(nc) = 0;
  im.phase_cost.conservativeResize(nc + 1);
  im.phase_cost(nc) = 0;

  SolveStatus st = im.dual_loop();
  im.solved_optimal = (st == SolveStatus::Optimal);
  return st;
}

SolveStatus SimplexSolver::set_bounds_and_reoptimize(int var,
                                                     std::optional<Rational> lower,
                                                     std::optional<Rational> upper) {
  Impl& im = *impl_;
  if (!im.solved_optimal)
    throw precondition_error("set_bounds_and_reoptimize requires an optimal basis");
  if (var < 0 || var >= im.n0) throw precondition_error("variable index out of range");
  if (lower && upper && *lower > *upper)
    throw precondition_error("empty bound interval");

  Column& c = im.cols[var];
  if (im.stat[var] == VarStatus::Basic) {
    c.lo = lower;
    c.up = upper;
  } else {
    const Rational old_val = im.nonbasic_value(var);
    c.lo = lower;
    c.up = upper;
    Rational new_val;
    VarStatus ns;
    if (c.lo && old_val <= *c.lo) { new_val = *c.lo; ns = VarStatus::AtLower; }
    else if (c.up && old_val >= *c.up) { new_val = *c.up; ns = VarStatus::AtUpper; }
    else if (c.lo && c.up && *c.lo == *c.up) { new_val = *c.lo; ns = VarStatus::AtLower; }
    else if (c.lo == std::nullopt && c.up == std::nullopt) { new_val = 0; ns = VarStatus::FreeZero; }
    else { new_val = c.lo ? *c.lo : *c.up; ns = c.lo ? VarStatus::AtLower : VarStatus::AtUpper; }
    const Rational delta = new_val - old_val;
    im.stat[var] = ns;
    if (delta != 0) {
      for (int i = 0; i < im.m(); ++i)
        if (im.tab(i, var) != 0) im.xb(i) -= im.tab(i, var) * delta;
    }
    // Relocation can break dual feasibility only when the variable is not
    // fixed and switched sides; fall back to a primal pass in that case.
    bool dual_ok = im.cols[var].fixed() ||
                   (ns == VarStatus::AtLower && im.d(var) >= 0) ||
                   (ns == VarStatus::AtUpper && im.d(var) <= 0) ||
                   (ns == VarStatus::FreeZero && im.d(var) == 0);
    if (!dual_ok) {
      SolveStatus st = im.primal_feasible() ? im.primal_loop() : im.dual_loop();
      im.solved_optimal = (st == SolveStatus::Optimal);
      return st;
    }
  }
  SolveStatus st = im.dual_loop();
  im.solved_optimal = (st == SolveStatus::Optimal);
  return st;
}

BasicSolution SimplexSolver::solution() const {
  return impl_->snapshot(impl_->solved_optimal ? SolveStatus::Optimal
                                               : SolveStatus::Infeasible);
}

SimplexSolver SimplexSolver::clone() const {
  return SimplexSolver(std::make_unique<Impl>(*impl_));
}

std::int64_t SimplexSolver::pivots_used() const { return impl_->pivots; }

BasicSolution simplex_solve(const LinearProgram& lp, SolverConfig cfg) {
  SimplexSolver s(lp, cfg);
  SolveStatus st = s.solve();
  if (st != SolveStatus::Optimal) {
    BasicSolution out;
    out.status = st;
    return out;
  }
  return s.solution();
}

BasicSolution add_row_and_resolve(const LinearProgram& lp, const BasicSolution& sol,
                                  const Row& row, SolverConfig cfg) {
  if (!sol.optimal())
    throw precondition_error("add_row_and_resolve requires an optimal solution");
  // Rebuild a solver for lp, force the recorded basis, then append the row.
  SimplexSolver solver(lp, cfg);
  // The recorded basis alone identifies the vertex, so re-solving and then
  // warm-adding matches a from-scratch solve exactly; sol supplies the basis
  // as a consistency check.
  SolveStatus st = solver.solve();
  if (st != SolveStatus::Optimal)
    throw precondition_error("LP no longer solves to optimality");
  st = solver.add_row_and_reoptimize(row);
  BasicSolution out = solver.solution();
  out.status = st;
  return out;
}

}  // namespace tsp12
