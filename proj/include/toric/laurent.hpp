#pragma once

// Sparse Laurent polynomials sum c_m chi^m over Q, with m in M = Z^n, and
// matrices of them. chi^m evaluates at t in (Q^*)^n as prod t_i^{m_i}.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/rational_matrix.hpp"

namespace toric {

class LaurentPolynomial {
 public:
  using Terms = std::map<Character, Rational>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPolynomial constant(std::size_t nvars, const Rational& c);
  static LaurentPolynomial monomial(const Character& exponent, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// (exponent, coefficient) when exactly one term is present.
  std::optional<std::pair<Character, Rational>> as_monomial() const;

  void add_term(const Character& exponent, const Rational& c);

  Rational evaluate(std::span<const Rational> point) const;
  /// Image under chi^m -> chi^{f(m)} for an integer linear map given by its
  /// matrix (rows = new exponent coordinates).
  LaurentPolynomial map_exponents(const IntMatrix& f) const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const Rational& c, const LaurentPolynomial& a);
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) = default;

  std::string str() const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static LaurentMatrix identity(std::size_t n, std::size_t nvars);
  static LaurentMatrix constant(const RatMatrix& m, std::size_t nvars);
  /// diag(chi^{w_1}, ..., chi^{w_r}).
  static LaurentMatrix diagonal_monomials(std::span<const Character> weights, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  LaurentPolynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const LaurentPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  LaurentPolynomial determinant() const;
  /// Adjugate divided by the determinant; defined when the determinant is a
  /// single monomial. Throws std::domain_error otherwise.
  LaurentMatrix inverse() const;
  RatMatrix evaluate(std::span<const Rational> point) const;
  LaurentMatrix map_exponents(const IntMatrix& f) const;
  /// Exponents of all monomials occurring in any entry.
  std::vector<Character> support() const;
  /// Coefficient matrix of chi^m.
  RatMatrix coefficient(const Character& m) const;
  bool is_diagonal() const;

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<LaurentPolynomial> entries_;
};

/// Pulls chi^m on T back along T x T -> T, (t, x) -> t x: m -> (m, m).
IntMatrix diagonal_embedding(std::size_t n);
/// Pulls back along the first / second projection T x T -> T.
IntMatrix first_factor(std::size_t n);
IntMatrix second_factor(std::size_t n);

}  // namespace toric
