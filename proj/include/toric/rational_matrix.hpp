#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/number.hpp"

namespace toric {

class IntMatrix;

/// Dense matrix over Q, row-major. Group elements, gauges and transition
/// values at a point are all of this type.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  explicit RatMatrix(const IntMatrix& m);

  static RatMatrix identity(std::size_t n);
  static RatMatrix scalar(std::size_t n, const Rational& c);
  static RatMatrix diagonal(std::span<const Rational> values);
  // Column i of the result is e_{perm[i]}.
  static RatMatrix permutation(std::span<const std::size_t> perm);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Rational>& entries() const { return entries_; }

  RatMatrix transpose() const;
  Rational determinant() const;
  std::size_t rank() const;
  bool invertible() const { return square() && determinant() != 0; }
  /// Throws std::domain_error when singular.
  RatMatrix inverse() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  bool is_integral() const;

  /// Basis of {x : A x = 0}, one column vector per element, taken from the
  /// reduced row echelon form (free variable set to 1, others 0).
  std::vector<std::vector<Rational>> nullspace() const;
  /// Linearly independent columns of A, leftmost first.
  std::vector<std::size_t> pivot_columns() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& c, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m);

/// A finite-dimensional Q-subspace of r x r matrices, with exact
/// membership and coordinates.
class MatrixSpan {
 public:
  MatrixSpan() = default;
  MatrixSpan(std::size_t n, std::vector<RatMatrix> generators);

  std::size_t matrix_size() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<RatMatrix>& basis() const { return basis_; }
  bool contains(const RatMatrix& m) const;
  MatrixSpan intersect(const MatrixSpan& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<RatMatrix> basis_;
  RatMatrix echelon_;  // rows span the flattened basis, in reduced form
  std::vector<std::size_t> pivots_;
};

}  // namespace toric
