#include "tsp12/mincut.hpp"

#include <algorithm>
#include <set>

#include "tsp12/errors.hpp"

namespace tsp12 {

namespace {

std::vector<NodeId> normalize_side(std::vector<NodeId> side, int n) {
  std::sort(side.begin(), side.end());
  if (2 * static_cast<int>(side.size()) > n) {
    std::vector<bool> in(n, false);
    for (NodeId v : side) in[v] = true;
    std::vector<NodeId> comp;
    for (int v = 0; v < n; ++v)
      if (!in[v]) comp.push_back(v);
    return comp;
  }
  if (2 * static_cast<int>(side.size()) == n && (side.empty() || side[0] != 0)) {
    std::vector<bool> in(n, false);
    for (NodeId v : side) in[v] = true;
    std::vector<NodeId> comp;
    for (int v = 0; v < n; ++v)
      if (!in[v]) comp.push_back(v);
    return comp;
  }
  return side;
}

std::vector<CutResult> run_phases(const FracSolution& x) {
  const int n = x.n;
  if (n < 2) throw precondition_error("min cut requires n >= 2");
  RatMatrix w = RatMatrix::Zero(n, n);
  for (const auto& [e, val] : x.x) {
    w(e.u, e.v) += val;
    w(e.v, e.u) += val;
  }
  std::vector<std::vector<NodeId>> group(n);
  for (int v = 0; v < n; ++v) group[v] = {v};
  std::vector<bool> active(n, true);
  std::vector<CutResult> phases;

  for (int remaining = n; remaining > 1; --remaining) {
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
      if (active[v]) start = v;
    std::vector<bool> added(n, false);
    added[start] = true;
    RatVector weight = w.col(start);
    int s = start, t = start;
    for (int step = 1; step < remaining; ++step) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (!active[v] || added[v]) continue;
        if (best < 0 || weight(v) > weight(best)) best = v;
      }
      added[best] = true;
      s = t;
      t = best;
      for (int v = 0; v < n; ++v)
        if (active[v] && !added[v]) weight(v) += w(v, best);
    }
    phases.push_back({normalize_side(group[t], n), weight(t)});
    // Merge t into s.
    active[t] = false;
    group[s].insert(group[s].end(), group[t].begin(), group[t].end());
    for (int v = 0; v < n; ++v) {
      if (!active[v] || v == s) continue;
      w(s, v) += w(t, v);
      w(v, s) = w(s, v);
    }
  }
  return phases;
}

}  // namespace

CutResult stoer_wagner_min_cut(const FracSolution& x) {
  auto phases = run_phases(x);
  const CutResult* best = &phases.front();
  for (const auto& p : phases)
    if (p.value < best->value) best = &p;
  return *best;
}

std::vector<CutResult> phase_cuts_below(const FracSolution& x, const Rational& threshold) {
  std::vector<CutResult> out;
  std::set<std::vector<NodeId>> seen;
  for (auto& p : run_phases(x)) {
    if (p.value >= threshold) continue;
    if (seen.insert(p.side).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace tsp12
