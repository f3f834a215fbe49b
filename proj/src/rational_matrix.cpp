#include "toric/rational_matrix.hpp"

#include "toric/lattice.hpp"

namespace toric {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& v : row) entries_.push_back(v);
  }
}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) { return scalar(n, Rational(1)); }

RatMatrix RatMatrix::scalar(std::size_t n, const Rational& c) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> values) {
  RatMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

RatMatrix RatMatrix::permutation(std::span<const std::size_t> perm) {
  RatMatrix m(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size()) throw std::invalid_argument("permutation index out of range");
    m(perm[i], i) = 1;
  }
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RatMatrix::determinant() const {
  if (!square()) throw std::invalid_argument("determinant of a non-square matrix");
  RatMatrix m = *this;
  Rational det = 1;
  for (std::size_t k = 0; k < rows_; ++k) {
    std::size_t p = k;
    while (p < rows_ && m(p, k) == 0) ++p;
    if (p == rows_) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < rows_; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < cols_; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t RatMatrix::rank() const {
  RatMatrix m = *this;
  return row_reduce(m).size();
}

RatMatrix RatMatrix::inverse() const {
  if (!square()) throw std::domain_error("inverse of a non-square matrix");
  std::size_t n = rows_;
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool RatMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

bool RatMatrix::is_identity() const { return square() && *this == identity(rows_); }

bool RatMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

bool RatMatrix::is_integral() const {
  for (const auto& e : entries_)
    if (e.get_den() != 1) return false;
  return true;
}

std::vector<std::vector<Rational>> RatMatrix::nullspace() const {
  RatMatrix m = *this;
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(cols_, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<std::size_t> RatMatrix::pivot_columns() const {
  RatMatrix m = *this;
  return row_reduce(m);
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape mismatch");
  RatMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) { return a + Rational(-1) * b; }

RatMatrix operator*(const Rational& c, const RatMatrix& a) {
  RatMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= c;
  return r;
}

std::string RatMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += to_string((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

MatrixSpan::MatrixSpan(std::size_t n, std::vector<RatMatrix> generators) : n_(n) {
  RatMatrix flat(generators.size(), n * n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].rows() != n || generators[g].cols() != n)
      throw std::invalid_argument("span generator has the wrong size");
    for (std::size_t k = 0; k < n * n; ++k) flat(g, k) = generators[g].entries()[k];
  }
  pivots_ = row_reduce(flat);
  echelon_ = RatMatrix(pivots_.size(), n * n);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    RatMatrix b(n, n);
    for (std::size_t k = 0; k < n * n; ++k) {
      echelon_(r, k) = flat(r, k);
      b(k / n, k % n) = flat(r, k);
    }
    basis_.push_back(std::move(b));
  }
}

bool MatrixSpan::contains(const RatMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) return false;
  std::vector<Rational> rest(m.entries());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    Rational c = rest[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= c * echelon_(r, k);
  }
  for (const auto& v : rest)
    if (v != 0) return false;
  return true;
}

MatrixSpan MatrixSpan::intersect(const MatrixSpan& other) const {
  if (other.n_ != n_) throw std::invalid_argument("span intersection size mismatch");
  // Solve sum a_i B_i = sum b_j C_j.
  std::size_t p = basis_.size(), q = other.basis_.size();
  RatMatrix system(n_ * n_, p + q);
  for (std::size_t k = 0; k < n_ * n_; ++k) {
    for (std::size_t i = 0; i < p; ++i) system(k, i) = basis_[i].entries()[k];
    for (std::size_t j = 0; j < q; ++j) system(k, p + j) = -other.basis_[j].entries()[k];
  }
  std::vector<RatMatrix> gens;
  for (const auto& x : system.nullspace()) {
    RatMatrix g(n_, n_);
    for (std::size_t i = 0; i < p; ++i) g = g + x[i] * basis_[i];
    gens.push_back(std::move(g));
  }
  return MatrixSpan(n_, std::move(gens));
}

}  // namespace toric
