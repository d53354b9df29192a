#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <optional>
#include <string>

namespace tsp12 {

// Exact arbitrary-precision rational; GMP keeps values canonical
// (denominator > 0, lowest terms).
using Rational = boost::multiprecision::mpq_rational;

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Renders "p/q", or just "p" when the value is integral.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& s);

/// Rank of a matrix over the rationals, by Gaussian elimination.
int rational_rank(RatMatrix m);

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

}  // namespace tsp12
