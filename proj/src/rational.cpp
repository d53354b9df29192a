#include "tsp12/rational.hpp"

#include <sstream>

namespace tsp12 {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;  // GMP prints "p/q", or "p" when q == 1
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  // Accept [-]digits[/digits] only; mpq_rational's string ctor is laxer.
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!digits(s)) return std::nullopt;
      return Rational(s);
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den) || den[0] == '-') return std::nullopt;
    Rational d(den);
    if (d == 0) return std::nullopt;
    return Rational(num) / d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int rational_rank(RatMatrix m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m(r, col) != 0) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    const Rational inv = Rational(1) / m(rank, col);
    for (int c = col; c < cols; ++c) m(rank, c) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = col; c < cols; ++c) m(r, c) -= f * m(rank, c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace tsp12
