#include "tsp12/solution.hpp"

namespace tsp12 {

Rational FracSolution::degree(NodeId v) const {
  Rational s = 0;
  for (const auto& [e, val] : x)
    if (e.u == v || e.v == v) s += val;
  return s;
}

bool FracSolution::degrees_are_two() const {
  std::vector<Rational> deg(n, Rational(0));
  for (const auto& [e, val] : x) {
    deg[e.u] += val;
    deg[e.v] += val;
  }
  for (const auto& d : deg)
    if (d != 2) return false;
  return true;
}

bool FracSolution::is_half_integral() const {
  static const Rational half(1, 2);
  for (const auto& [e, val] : x)
    if (val != half && val != 1 && val != 0) return false;
  return true;
}

bool FracSolution::is_integral() const {
  for (const auto& [e, val] : x)
    if (val != 0 && val != 1) return false;
  return true;
}

Rational FracSolution::cut_value(std::uint32_t mask) const {
  Rational s = 0;
  for (const auto& [e, val] : x) {
    const bool inu = (mask >> e.u) & 1u, inv = (mask >> e.v) & 1u;
    if (inu != inv) s += val;
  }
  return s;
}

Rational FracSolution::cost_against(const Instance& inst) const {
  Rational s = 0;
  for (const auto& [e, val] : x) s += Rational(inst.cost(e)) * val;
  return s;
}

}  // namespace tsp12
