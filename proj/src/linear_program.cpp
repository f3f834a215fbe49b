#include "toric/linear_program.hpp"

namespace toric {

std::optional<std::vector<Rational>> nonnegative_solution(const RatMatrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("right-hand side has the wrong length");
  const std::size_t width = n + m + 1;  // structural, artificial, rhs
  RatMatrix t(m + 1, width);            // last row holds reduced costs
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
    t(i, n + i) = 1;
    t(i, width - 1) = sign * b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < width; ++j) {
    Rational cost = (j >= n && j < n + m) ? 1 : 0;
    for (std::size_t i = 0; i < m; ++i) cost -= t(i, j);
    t(m, j) = cost;
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, width - 1) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    Rational inv = 1 / t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational f = t(i, enter);
      for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) {
      if (t(i, width - 1) != 0) return std::nullopt;
    } else {
      x[basis[i]] = t(i, width - 1);
    }
  }
  return x;
}

}  // namespace toric
