#include "toric/lattice.hpp"

#include <algorithm>

namespace toric {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw LatticeError("ragged matrix literal");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t dim, std::span<const LatticeVector> columns) {
  IntMatrix m(dim, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].dim() != dim) throw LatticeError("column " + std::to_string(j) + " has wrong dimension");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

LatticeVector IntMatrix::column(std::size_t j) const {
  LatticeVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Character IntMatrix::row(std::size_t i) const {
  Character m(cols_);
  for (std::size_t j = 0; j < cols_; ++j) m[j] = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

// Bareiss fraction-free elimination.
Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw LatticeError("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw LatticeError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::str() const {
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

Integer pairing(const Character& m, const LatticeVector& v) {
  if (m.dim() != v.dim())
    throw LatticeError("pairing of a rank-" + std::to_string(m.dim()) + " character with a rank-" +
                       std::to_string(v.dim()) + " vector");
  Integer s = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) s += m[i] * v[i];
  return s;
}

bool is_primitive(const LatticeVector& v) {
  if (v.is_zero()) throw LatticeError("primitivity of the zero vector is undefined");
  Integer g = 0;
  for (const auto& c : v.coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g == 1;
}

namespace {

// Replace rows (p, q) of both matrices by [[s, t], [u, w]] * (row_p, row_q).
void combine_rows(IntMatrix& m, std::size_t p, std::size_t q, const Integer& s, const Integer& t,
                  const Integer& u, const Integer& w) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer a = m(p, j), b = m(q, j);
    m(p, j) = s * a + t * b;
    m(q, j) = u * a + w * b;
  }
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& a) {
  HermiteForm out{IntMatrix::identity(a.rows()), a, {}};
  IntMatrix& h = out.form;
  IntMatrix& u = out.transform;
  std::size_t p = 0;
  for (std::size_t j = 0; j < h.cols() && p < h.rows(); ++j) {
    for (std::size_t i = p + 1; i < h.rows(); ++i) {
      if (h(i, j) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(p, j).get_mpz_t(), h(i, j).get_mpz_t());
      Integer b_over_g = h(i, j) / g;
      Integer a_over_g = h(p, j) / g;
      combine_rows(h, p, i, s, t, -b_over_g, a_over_g);
      combine_rows(u, p, i, s, t, -b_over_g, a_over_g);
    }
    if (h(p, j) == 0) continue;
    if (h(p, j) < 0) {
      h.negate_row(p);
      u.negate_row(p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(p, j).get_mpz_t());
      h.add_row_multiple(i, p, -q);
      u.add_row_multiple(i, p, -q);
    }
    out.pivot_cols.push_back(j);
    ++p;
  }
  return out;
}

std::vector<Integer> SmithForm::divisors() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i) d.push_back(diagonal(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm out{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = out.diagonal;
  IntMatrix& u = out.left;
  IntMatrix& v = out.right;
  std::size_t limit = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          Integer m = abs(d(i, j));
          if (!found || m < best) {
            found = true;
            best = m;
            pi = i;
            pj = j;
          }
        }
      if (!found) return out;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw LatticeError("inverse of a non-square matrix");
  HermiteForm h = hermite_normal_form(m);
  // The Hermite form of a unimodular matrix is the identity.
  if (h.form != IntMatrix::identity(m.rows())) throw LatticeError("matrix is not unimodular");
  return h.transform;
}

IntMatrix extend_to_basis(std::size_t dim, std::span<const LatticeVector> vs) {
  if (dim == 0) throw LatticeError("lattice rank must be positive");
  if (vs.size() > dim) throw LatticeError("more vectors than the lattice rank: linearly dependent");
  if (vs.empty()) return IntMatrix::identity(dim);
  IntMatrix a = IntMatrix::from_columns(dim, vs);

  auto divisors = smith_normal_form(a).divisors();
  for (const auto& d : divisors)
    if (d == 0) throw LatticeError("vectors are linearly dependent");
  for (const auto& d : divisors)
    if (d != 1) throw LatticeError("vectors do not extend to a lattice basis (elementary divisor " + to_string(d) + ")");

  HermiteForm h = hermite_normal_form(a);
  // With unit elementary divisors the Hermite form is [I_k; 0], so U^{-1}
  // reproduces the input in its leading columns.
  IntMatrix basis = unimodular_inverse(h.transform);
  for (std::size_t j = 0; j < vs.size(); ++j)
    if (basis.column(j) != vs[j]) throw LatticeError("internal error: basis completion mismatch");
  return basis;
}

}  // namespace toric
