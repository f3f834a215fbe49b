#pragma once

// Exact integer linear algebra over N = Z^n and its dual M = Hom(N, Z).

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/number.hpp"

namespace toric {

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer n-tuple tagged by the lattice it lives in, so that one-parameter
/// subgroups and characters cannot be mixed up by accident.
template <class Tag>
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t dim) : coords_(dim, Integer(0)) {}
  explicit IntVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  IntVector(std::initializer_list<long> coords) {
    coords_.reserve(coords.size());
    for (long c : coords) coords_.emplace_back(c);
  }

  std::size_t dim() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  IntVector& operator+=(const IntVector& other) {
    check_same_dim(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
  }
  IntVector& operator-=(const IntVector& other) {
    check_same_dim(other);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
  }
  IntVector& operator*=(const Integer& k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }
  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& k, IntVector a) { return a *= k; }
  IntVector operator-() const {
    IntVector r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.coords_ == b.coords_; }
  // Lexicographic; shorter vectors sort first.
  friend std::strong_ordering operator<=>(const IntVector& a, const IntVector& b) {
    std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
      int c = cmp(a.coords_[i], b.coords_[i]);
      if (c < 0) return std::strong_ordering::less;
      if (c > 0) return std::strong_ordering::greater;
    }
    return a.dim() <=> b.dim();
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  void check_same_dim(const IntVector& other) const {
    if (other.dim() != dim()) throw LatticeError("lattice dimension mismatch");
  }

  std::vector<Integer> coords_;
};

struct NTag;
struct MTag;
using LatticeVector = IntVector<NTag>;  // element of N
using Character = IntVector<MTag>;      // element of M

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t dim, std::span<const LatticeVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  LatticeVector column(std::size_t j) const;
  Character row(std::size_t i) const;
  IntMatrix transpose() const;
  Integer determinant() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

Integer pairing(const Character& m, const LatticeVector& v);

/// gcd of the coordinates is 1. Throws on the zero vector.
bool is_primitive(const LatticeVector& v);

struct HermiteForm {
  IntMatrix transform;  // unimodular U
  IntMatrix form;       // H = U * A, row echelon, pivots positive, reduced above
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite_normal_form(const IntMatrix& a);

struct SmithForm {
  IntMatrix left;      // U
  IntMatrix diagonal;  // D = U * A * V
  IntMatrix right;     // V
  std::vector<Integer> divisors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Unimodular n x n matrix whose first columns are exactly `vs`. The
/// completion is canonical: with U * A in Hermite form, the appended
/// columns are U^{-1} e_j for the non-pivot rows j.
IntMatrix extend_to_basis(std::size_t dim, std::span<const LatticeVector> vs);

/// Inverse of a determinant +-1 matrix; throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace toric
