#include "tsp12/dualcert.hpp"

#include <algorithm>
#include <set>

namespace tsp12 {

DualCertificate build_dual(const Instance& inst, const CycleCover& cover,
                           const MatchResult& match) {
  if (!cover_is_normalized(inst, cover))
    throw precondition_error("build_dual requires a normalized cover");
  const int n = inst.n();
  DualCertificate cert;
  cert.n = n;
  cert.y_node = RatVector::Constant(n, Rational(1, 2));
  for (NodeId v : match.cover_nodes) cert.y_node(v) = 0;

  std::set<int> in_cm(match.cover_cycles.begin(), match.cover_cycles.end());
  for (int li : match.left_cycles) {
    if (in_cm.count(li)) continue;
    std::vector<NodeId> s = cover.cycles[li];
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) < 3 || static_cast<int>(s.size()) > n - 3)
      throw structural_error("pure-cycle dual set size outside [3, n-3]");
    cert.y_set.emplace_back(std::move(s), Rational(1, 2));
  }

  cert.value = 0;
  for (const auto& [s, y] : cert.y_set) cert.value += 2 * y;
  for (int v = 0; v < n; ++v) cert.value += 2 * cert.y_node(v);
  if (cert.value != Rational(n + match.r))
    throw structural_error("dual objective is not n + r");
  return cert;
}

Rational verify_dual(const Instance& inst, const DualCertificate& cert) {
  const int n = inst.n();
  if (cert.n != n) throw precondition_error("certificate/instance size mismatch");
  if (static_cast<int>(cert.y_node.size()) != n)
    throw structural_error("certificate has wrong y_node length");
  for (const auto& [s, y] : cert.y_set) {
    if (y < 0) throw structural_error("negative set dual");
    if (static_cast<int>(s.size()) < 3 || static_cast<int>(s.size()) > n - 3)
      throw structural_error("set dual on a set outside [3, n-3]");
  }
  for (const auto& [e, z] : cert.z_edge)
    if (z < 0) throw structural_error("negative edge dual z");

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Edge e(u, v);
      Rational load = cert.y_node(u) + cert.y_node(v);
      for (const auto& [s, y] : cert.y_set) {
        bool inu = std::binary_search(s.begin(), s.end(), u);
        bool inv = std::binary_search(s.begin(), s.end(), v);
        if (inu != inv) load += y;
      }
      auto it = cert.z_edge.find(e);
      if (it != cert.z_edge.end()) load -= it->second;
      const Rational c(inst.cost(e));
      if (load > c)
        throw structural_error("load constraint violated on edge " +
                               std::to_string(u) + "-" + std::to_string(v) +
                               ": load " + to_string(load) + " > " + to_string(c));
    }
  }

  Rational value = 0;
  for (const auto& [s, y] : cert.y_set) value += 2 * y;
  for (int v = 0; v < n; ++v) value += 2 * cert.y_node(v);
  for (const auto& [e, z] : cert.z_edge) value -= z;
  return value;
}

}  // namespace tsp12
