#include "toric/laurent.hpp"

#include <set>
#include <stdexcept>

namespace toric {

LaurentPolynomial LaurentPolynomial::constant(std::size_t nvars, const Rational& c) {
  LaurentPolynomial p(nvars);
  p.add_term(Character(nvars), c);
  return p;
}

LaurentPolynomial LaurentPolynomial::monomial(const Character& exponent, const Rational& c) {
  LaurentPolynomial p(exponent.dim());
  p.add_term(exponent, c);
  return p;
}

std::optional<std::pair<Character, Rational>> LaurentPolynomial::as_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  return *terms_.begin();
}

void LaurentPolynomial::add_term(const Character& exponent, const Rational& c) {
  if (exponent.dim() != nvars_) throw std::invalid_argument("monomial has the wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LaurentPolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has the wrong dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_; ++i) v *= power(point[i], m[i]);
    sum += v;
  }
  return sum;
}

LaurentPolynomial LaurentPolynomial::map_exponents(const IntMatrix& f) const {
  if (f.cols() != nvars_) throw std::invalid_argument("exponent map has the wrong source rank");
  LaurentPolynomial out(f.rows());
  for (const auto& [m, c] : terms_) {
    Character image(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < nvars_; ++j) image[i] += f(i, j) * m[j];
    out.add_term(image, c);
  }
  return out;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("Laurent sum with mismatched variables");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  if (other.nvars_ != nvars_) throw std::invalid_argument("Laurent difference with mismatched variables");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Laurent product with mismatched variables");
  LaurentPolynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma + mb, ca * cb);
  return out;
}

LaurentPolynomial operator*(const Rational& c, const LaurentPolynomial& a) {
  LaurentPolynomial out(a.nvars_);
  if (c == 0) return out;
  for (const auto& [m, v] : a.terms_) out.terms_.emplace(m, c * v);
  return out;
}

std::string LaurentPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += to_string(c);
    if (!m.is_zero()) s += "*x^" + m.str();
  }
  return s;
}

LaurentMatrix::LaurentMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, LaurentPolynomial(nvars)) {}

LaurentMatrix LaurentMatrix::identity(std::size_t n, std::size_t nvars) {
  return constant(RatMatrix::identity(n), nvars);
}

LaurentMatrix LaurentMatrix::constant(const RatMatrix& m, std::size_t nvars) {
  LaurentMatrix out(m.rows(), m.cols(), nvars);
  Character zero(nvars);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j).add_term(zero, m(i, j));
  return out;
}

LaurentMatrix LaurentMatrix::diagonal_monomials(std::span<const Character> weights, std::size_t nvars) {
  LaurentMatrix out(weights.size(), weights.size(), nvars);
  for (std::size_t i = 0; i < weights.size(); ++i) out(i, i).add_term(weights[i], 1);
  return out;
}

namespace {

LaurentPolynomial determinant_of(const LaurentMatrix& m, std::vector<std::size_t>& rows,
                                 std::vector<std::size_t>& cols) {
  if (rows.empty()) return LaurentPolynomial::constant(m.nvars(), 1);
  std::size_t r = rows.front();
  rows.erase(rows.begin());
  LaurentPolynomial det(m.nvars());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const auto& entry = m(r, cols[k]);
    if (entry.is_zero()) continue;
    std::size_t c = cols[k];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    LaurentPolynomial minor = determinant_of(m, rows, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    LaurentPolynomial term = entry * minor;
    if (k % 2) det -= term;
    else det += term;
  }
  rows.insert(rows.begin(), r);
  return det;
}

}  // namespace

LaurentPolynomial LaurentMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square Laurent matrix");
  std::vector<std::size_t> rows(rows_), cols(cols_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = cols[i] = i;
  return determinant_of(*this, rows, cols);
}

LaurentMatrix LaurentMatrix::inverse() const {
  auto det = determinant().as_monomial();
  if (!det) throw std::domain_error("Laurent matrix determinant is not a unit monomial");
  LaurentPolynomial det_inv = LaurentPolynomial::monomial(-det->first, 1 / det->second);
  std::size_t n = rows_;
  LaurentMatrix out(n, n, nvars_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^{i+j} * minor(j, i)
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      LaurentPolynomial minor = determinant_of(*this, rows, cols);
      if ((i + j) % 2) minor = Rational(-1) * minor;
      out(i, j) = minor * det_inv;
    }
  return out;
}

RatMatrix LaurentMatrix::evaluate(std::span<const Rational> point) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).evaluate(point);
  return out;
}

LaurentMatrix LaurentMatrix::map_exponents(const IntMatrix& f) const {
  LaurentMatrix out(rows_, cols_, f.rows());
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].map_exponents(f);
  return out;
}

std::vector<Character> LaurentMatrix::support() const {
  std::set<Character> s;
  for (const auto& e : entries_)
    for (const auto& [m, c] : e.terms()) s.insert(m);
  return {s.begin(), s.end()};
}

RatMatrix LaurentMatrix::coefficient(const Character& m) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      auto it = (*this)(i, j).terms().find(m);
      if (it != (*this)(i, j).terms().end()) out(i, j) = it->second;
    }
  return out;
}

bool LaurentMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw std::invalid_argument("Laurent matrix product mismatch");
  LaurentMatrix c(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        c(i, j) += aik * b(k, j);
      }
    }
  return c;
}

std::string LaurentMatrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
    s += "]";
  }
  return s + "]";
}

IntMatrix diagonal_embedding(std::size_t n) {
  IntMatrix f(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) f(i, i) = f(n + i, i) = 1;
  return f;
}

IntMatrix first_factor(std::size_t n) {
  IntMatrix f(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) f(i, i) = 1;
  return f;
}

IntMatrix second_factor(std::size_t n) {
  IntMatrix f(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) f(n + i, i) = 1;
  return f;
}

}  // namespace toric
