#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsp12/instance.hpp"

namespace tsp12 {

/// Canonical form of a simple graph on n <= 11 nodes: the lexicographically
/// largest upper-triangle adjacency code over all vertex orderings, packed
/// column by column (bits (0,1), (0,2),(1,2), (0,3),(1,3),(2,3), ...).
struct CanonResult {
  int n = 0;
  std::uint64_t code = 0;
  std::vector<NodeId> first_ordering;  // one ordering achieving the code
  std::vector<int> orbit;              // orbit id per vertex, exact
};

CanonResult canonical_form(int n, const std::vector<Edge>& edges);

/// Edges of the canonically labeled graph (decoded from `code`).
std::vector<Edge> decode_code(int n, std::uint64_t code);

std::string certificate_string(int n, std::uint64_t code);
/// Inverse of certificate_string ("n:hex"); throws structural_error on junk.
std::pair<int, std::uint64_t> parse_certificate(const std::string& s);

/// Exhaustive isomorphism test by permutation search (test oracle scale).
bool graphs_isomorphic(int n, const std::vector<Edge>& a, const std::vector<Edge>& b);

}  // namespace tsp12
