#include "tsp12/transforms.hpp"

#include <algorithm>

namespace tsp12 {

Instance connectify(const Instance& inst) {
  if (is_connected(inst))
    throw precondition_error("connectify: cost-1 graph already connected");
  const int n = inst.n();
  std::vector<Edge> edges = inst.ones();
  for (int j = 0; j < n; ++j) edges.emplace_back(j, n);
  return Instance(n + 1, std::move(edges));
}

Instance biconnectify(const Instance& inst) {
  if (!is_connected(inst))
    throw precondition_error("biconnectify: cost-1 graph is disconnected");
  std::vector<NodeId> cuts = articulation_points(inst);
  if (cuts.empty())
    throw precondition_error("biconnectify: cost-1 graph already biconnected");
  const int n = inst.n();
  std::vector<bool> is_cut(n, false);
  for (NodeId v : cuts) is_cut[v] = true;
  std::vector<Edge> edges = inst.ones();
  for (int j = 0; j < n; ++j)
    if (!is_cut[j]) edges.emplace_back(j, n);
  return Instance(n + 1, std::move(edges));
}

namespace {

std::vector<Edge> positive_cost2_edges(const Instance& inst, const FracSolution& x) {
  std::vector<Edge> out;
  for (const auto& [e, val] : x.x)
    if (val > 0 && inst.cost(e) == 2) out.push_back(e);
  return out;
}

void check_absorber_pre(const Instance& inst, const FracSolution& x) {
  if (x.n != inst.n())
    throw precondition_error("absorber: solution/instance size mismatch");
  if (!x.degrees_are_two())
    throw precondition_error("absorber: solution violates degree constraints");
  if (x.cost_against(inst) < inst.n() + 1)
    throw precondition_error("absorber: subtour LP value below n+1");
}

}  // namespace

Instance add_absorber_node(const Instance& inst, const FracSolution& x) {
  check_absorber_pre(inst, x);
  std::vector<Edge> twos = positive_cost2_edges(inst, x);
  if (twos.empty())
    throw precondition_error("absorber: no positive value on any cost-2 edge");
  const int n = inst.n();
  std::vector<bool> incident(n, false);
  for (const Edge& e : twos) incident[e.u] = incident[e.v] = true;
  std::vector<Edge> edges = inst.ones();
  for (int j = 0; j < n; ++j)
    if (incident[j]) edges.emplace_back(j, n);
  return Instance(n + 1, std::move(edges));
}

FracSolution absorber_reroute(const Instance& inst, const FracSolution& x) {
  check_absorber_pre(inst, x);
  std::vector<Edge> twos = positive_cost2_edges(inst, x);
  if (twos.empty())
    throw precondition_error("absorber: no positive value on any cost-2 edge");
  const int n = inst.n();
  FracSolution out;
  out.n = n + 1;
  out.x = x.x;
  Rational remaining(1);
  for (const Edge& e : twos) {
    if (remaining == 0) break;
    const Rational avail = out.value(e);
    const Rational move = std::min(avail, remaining);
    out.set(e, avail - move);
    out.set(Edge(e.u, n), out.value(Edge(e.u, n)) + move);
    out.set(Edge(e.v, n), out.value(Edge(e.v, n)) + move);
    remaining -= move;
  }
  if (remaining != 0)
    throw precondition_error("absorber: less than one unit of cost-2 value to move");
  const Instance bigger = add_absorber_node(inst, x);
  out.objective = out.cost_against(bigger);
  if (out.objective != x.cost_against(inst))
    throw structural_error("absorber rerouting changed the objective");
  return out;
}

}  // namespace tsp12
