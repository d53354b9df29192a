#include "tsp12/subtour.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

namespace tsp12 {

std::vector<Edge> complete_edge_list(int n) {
  std::vector<Edge> out;
  out.reserve(n * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

int edge_index(int n, const Edge& e) {
  return e.u * n - e.u * (e.u + 1) / 2 + (e.v - e.u - 1);
}

namespace {

LinearProgram degree_lp(const Instance& inst) {
  const int n = inst.n();
  const auto edges = complete_edge_list(n);
  const int m = static_cast<int>(edges.size());
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.objective = RatVector::Zero(m);
  lp.bounds.assign(m, VarBounds{Rational(0), Rational(1)});
  for (int j = 0; j < m; ++j) lp.objective(j) = inst.cost(edges[j]);
  lp.rows.reserve(n);
  for (int v = 0; v < n; ++v) {
    Row r;
    r.coeffs = RatVector::Zero(m);
    for (int j = 0; j < m; ++j)
      if (edges[j].u == v || edges[j].v == v) r.coeffs(j) = 1;
    r.rel = Relation::Equal;
    r.rhs = 2;
    lp.rows.push_back(std::move(r));
  }
  return lp;
}

Row subtour_row(int n, const std::vector<NodeId>& set) {
  const auto edges = complete_edge_list(n);
  std::vector<bool> in(n, false);
  for (NodeId v : set) in[v] = true;
  Row r;
  r.coeffs = RatVector::Zero(static_cast<int>(edges.size()));
  for (std::size_t j = 0; j < edges.size(); ++j)
    if (in[edges[j].u] != in[edges[j].v]) r.coeffs(static_cast<int>(j)) = 1;
  r.rel = Relation::GreaterEq;
  r.rhs = 2;
  return r;
}

FracSolution extract(const Instance& inst, const BasicSolution& sol) {
  FracSolution out;
  out.n = inst.n();
  const auto edges = complete_edge_list(out.n);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const Rational& v = sol.values(static_cast<int>(j));
    if (v != 0) out.x.emplace(edges[j], v);
  }
  out.objective = sol.objective;
  return out;
}

bool valid_cut_size(int n, std::size_t k) {
  return static_cast<int>(k) >= 3 && static_cast<int>(k) <= n - 3;
}

}  // namespace

FracSolution solve_f2m_lp(const Instance& inst, SolverConfig cfg) {
  if (inst.n() < 3) throw precondition_error("F2M LP requires n >= 3");
  BasicSolution sol = simplex_solve(degree_lp(inst), cfg);
  if (!sol.optimal()) throw structural_error("F2M LP did not solve to optimality");
  FracSolution x = extract(inst, sol);
  if (!x.is_half_integral())
    throw structural_error("basic F2M solution is not half-integral");
  if (!x.degrees_are_two())
    throw structural_error("basic F2M solution violates degree constraints");
  return x;
}

std::optional<CutResult> min_cut_separation(const FracSolution& x) {
  if (!x.degrees_are_two())
    throw precondition_error("separation requires degree constraints to hold");
  if (x.n < 6) return std::nullopt;  // no set with 3 <= |S| <= n-3 exists
  CutResult cut = stoer_wagner_min_cut(x);
  if (cut.value >= 2) return std::nullopt;
  if (!valid_cut_size(x.n, cut.side.size()))
    throw structural_error("minimum cut below 2 with out-of-range side size");
  return cut;
}

namespace {

// The solver-facing loop shared by solve_subtour_lp and the IP search: adds
// every phase cut below 2 until the oracle is silent. Returns the cuts added.
CutFamily subtour_cut_loop(const Instance& inst, SimplexSolver& solver) {
  CutFamily family;
  const int n = inst.n();
  if (n < 6) return family;
  for (;;) {
    FracSolution x = extract(inst, solver.solution());
    auto cuts = phase_cuts_below(x, Rational(2));
    std::erase_if(cuts, [&](const CutResult& c) {
      return !valid_cut_size(n, c.side.size());
    });
    if (cuts.empty()) return family;
    for (const auto& c : cuts) {
      SolveStatus st = solver.add_row_and_reoptimize(subtour_row(n, c.side));
      if (st != SolveStatus::Optimal)
        throw structural_error("subtour LP became infeasible after a cut");
      family.push_back(c.side);
    }
  }
}

}  // namespace

SubtourResult solve_subtour_lp(const Instance& inst, SolverConfig cfg) {
  if (inst.n() < 3) throw precondition_error("subtour LP requires n >= 3");
  SimplexSolver solver(degree_lp(inst), cfg);
  if (solver.solve() != SolveStatus::Optimal)
    throw structural_error("degree LP did not solve to optimality");
  CutFamily cuts = subtour_cut_loop(inst, solver);
  FracSolution x = extract(inst, solver.solution());

  // Objective identity: value = n + total x on cost-2 edges, and >= n.
  Rational two_part = 0;
  for (const auto& [e, val] : x.x)
    if (inst.cost(e) == 2) two_part += val;
  if (x.objective != Rational(inst.n()) + two_part || x.objective < inst.n())
    throw structural_error("subtour LP objective identity violated");
  return {std::move(x), std::move(cuts)};
}

namespace {

struct BranchContext {
  const Instance& inst;
  BranchBoundConfig cfg;
  std::vector<Edge> edges;
  std::int64_t nodes_used = 0;
  std::mt19937 rng;

  explicit BranchContext(const Instance& i, const BranchBoundConfig& c)
      : inst(i), cfg(c), edges(complete_edge_list(i.n())), rng(c.shuffle_seed) {}

  void charge_node() {
    if (++nodes_used > cfg.node_budget)
      throw budget_error("branch-and-bound node budget exhausted (" +
                         std::to_string(cfg.node_budget) + ")");
  }

  int pick_branch_var(const BasicSolution& sol) {
    std::vector<int> frac;
    for (int j = 0; j < static_cast<int>(edges.size()); ++j)
      if (sol.values(j) != 0 && sol.values(j) != 1) frac.push_back(j);
    if (frac.empty()) return -1;
    if (!cfg.shuffle) return frac.front();
    std::uniform_int_distribution<std::size_t> pick(0, frac.size() - 1);
    return frac[pick(rng)];
  }
};

// Cycles of an integral degree-2 solution, each rotated to start at its
// smallest node and oriented with the smaller neighbor second.
std::vector<std::vector<NodeId>> integral_cycles(const FracSolution& x) {
  const int n = x.n;
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& [e, val] : x.x) {
    if (val != 1) throw structural_error("integral_cycles on fractional solution");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeId>> cycles;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    if (adj[s].size() != 2) throw structural_error("degree != 2 in integral solution");
    std::vector<NodeId> cyc{s};
    seen[s] = true;
    int prev = s, cur = adj[s][0];
    while (cur != s) {
      seen[cur] = true;
      cyc.push_back(cur);
      int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

// Generic DFS over LP-relaxation nodes. `on_integral` inspects an integral
// point; returning false demands more cuts at the same node (the callback
// must have added them through the solver reference it captured).
void branch_dfs(BranchContext& ctx, SimplexSolver& solver,
                const std::function<bool(SimplexSolver&, const BasicSolution&)>& on_integral,
                const std::function<Rational()>& incumbent) {
  ctx.charge_node();
  for (;;) {
    BasicSolution sol = solver.solution();
    if (!sol.optimal()) return;  // infeasible node
    if (sol.objective > incumbent() - 1) return;  // integer costs: cannot beat
    const int var = ctx.pick_branch_var(sol);
    if (var < 0) {
      if (on_integral(solver, sol)) return;
      continue;  // cuts were added and the node reoptimized
    }
    SimplexSolver one = solver.clone();
    one.set_bounds_and_reoptimize(var, Rational(1), Rational(1));
    branch_dfs(ctx, one, on_integral, incumbent);
    if (solver.set_bounds_and_reoptimize(var, Rational(0), Rational(0)) != SolveStatus::Optimal)
      return;
    ctx.charge_node();
  }
}

}  // namespace

TspIpResult solve_tsp_ip(const Instance& inst, BranchBoundConfig cfg) {
  const int n = inst.n();
  if (n < 3) throw precondition_error("TSP IP requires n >= 3");
  BranchContext ctx(inst, cfg);

  // Independent starting incumbent: the identity tour.
  Tour best;
  best.order.resize(n);
  for (int i = 0; i < n; ++i) best.order[i] = i;
  best.cost = tour_cost(inst, best.order);

  SimplexSolver root(degree_lp(inst), cfg.solver);
  if (root.solve() != SolveStatus::Optimal)
    throw structural_error("degree LP did not solve to optimality");
  CutFamily cuts = subtour_cut_loop(inst, root);

  auto incumbent = [&]() { return Rational(best.cost); };
  auto on_integral = [&](SimplexSolver& solver, const BasicSolution& sol) {
    FracSolution x = extract(inst, sol);
    auto cycles = integral_cycles(x);
    if (cycles.size() == 1) {
      const int c = static_cast<int>(sol.objective);
      if (c < best.cost) {
        best.order = cycles.front();
        best.cost = c;
      }
      return true;
    }
    bool added = false;
    for (const auto& cyc : cycles) {
      if (!valid_cut_size(n, cyc.size())) continue;
      std::vector<NodeId> s(cyc.begin(), cyc.end());
      std::sort(s.begin(), s.end());
      if (solver.add_row_and_reoptimize(subtour_row(n, s)) != SolveStatus::Optimal)
        return true;  // node infeasible after the cut; nothing more here
      cuts.push_back(std::move(s));
      added = true;
    }
    if (!added)
      throw structural_error("disconnected integral solution without a valid cut");
    return false;
  };

  branch_dfs(ctx, root, on_integral, incumbent);
  validate_tour(inst, best);
  return {best.cost, std::move(best), std::move(cuts)};
}

TwoMatching solve_min_2m(const Instance& inst, BranchBoundConfig cfg) {
  const int n = inst.n();
  if (n < 3) throw precondition_error("2-matching requires n >= 3");
  BranchContext ctx(inst, cfg);

  TwoMatching best;
  {
    std::vector<NodeId> identity(n);
    for (int i = 0; i < n; ++i) identity[i] = i;
    best.cost = tour_cost(inst, identity);
    best.cycles = {identity};
  }

  SimplexSolver root(degree_lp(inst), cfg.solver);
  if (root.solve() != SolveStatus::Optimal)
    throw structural_error("degree LP did not solve to optimality");

  auto incumbent = [&]() { return Rational(best.cost); };
  auto on_integral = [&](SimplexSolver&, const BasicSolution& sol) {
    FracSolution x = extract(inst, sol);
    auto cycles = integral_cycles(x);
    const int c = static_cast<int>(sol.objective);
    if (c < best.cost) {
      best.cost = c;
      best.cycles = std::move(cycles);
    }
    return true;
  };

  branch_dfs(ctx, root, on_integral, incumbent);
  return best;
}

std::optional<std::vector<NodeId>> violated_subtour_cut_exhaustive(const FracSolution& x) {
  const int n = x.n;
  if (n > 20) throw precondition_error("exhaustive cut check limited to n <= 20");
  if (n < 6) return std::nullopt;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int k = std::popcount(mask);
    if (k < 3 || k > n - 3) continue;
    if (x.cut_value(mask) < 2) {
      std::vector<NodeId> out;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) out.push_back(v);
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace tsp12
