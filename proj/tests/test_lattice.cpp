#include <doctest.h>

#include <numeric>
#include <random>

#include "toric/lattice.hpp"

using namespace toric;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

bool is_unimodular(const IntMatrix& m) {
  Integer d = m.determinant();
  return d == 1 || d == -1;
}

// gcd of all k x k minors, by brute force over row and column subsets.
Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(a.rows()), cols(a.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      if (static_cast<std::size_t>(__builtin_popcount(mask)) == k) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1u << i)) s.push_back(i);
        out.push_back(s);
      }
    return out;
  };
  for (const auto& rs : subsets(a.rows(), k))
    for (const auto& cs : subsets(a.cols(), k)) {
      IntMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(rs[i], cs[j]);
      Integer d = minor.determinant();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("pairing") {
    CHECK(pairing(Character{1, 0}, LatticeVector{1, 0}) == 1);
    CHECK(pairing(Character{0, 0}, LatticeVector{5, -3}) == 0);
    CHECK(pairing(Character{2, -1}, LatticeVector{3, 4}) == 2);
    CHECK_THROWS_AS(pairing(Character{1}, LatticeVector{1, 2}), LatticeError);
  }

  TEST_CASE("pairing is bilinear") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> u(-20, 20);
    for (int t = 0; t < 200; ++t) {
      Character a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
      LatticeVector v{u(rng), u(rng), u(rng)}, w{u(rng), u(rng), u(rng)};
      CHECK(pairing(a + b, v) == pairing(a, v) + pairing(b, v));
      CHECK(pairing(a, v + w) == pairing(a, v) + pairing(a, w));
    }
  }

  TEST_CASE("primitive vectors") {
    CHECK(is_primitive(LatticeVector{1, 0}));
    CHECK_FALSE(is_primitive(LatticeVector{2, 4}));
    CHECK(is_primitive(LatticeVector{3, 5}));
    CHECK(is_primitive(LatticeVector{-6, 10, 15}));
    CHECK_THROWS_AS(is_primitive(LatticeVector{0, 0}), LatticeError);
  }

  TEST_CASE("hermite form of random matrices") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
      IntMatrix a = random_matrix(rng, 3, 4, 6);
      HermiteForm h = hermite_normal_form(a);
      CHECK(is_unimodular(h.transform));
      CHECK(h.transform * a == h.form);
      // echelon with positive pivots and reduced entries above them
      for (std::size_t k = 0; k < h.pivot_cols.size(); ++k) {
        std::size_t c = h.pivot_cols[k];
        CHECK(h.form(k, c) > 0);
        for (std::size_t i = k + 1; i < h.form.rows(); ++i) CHECK(h.form(i, c) == 0);
        for (std::size_t i = 0; i < k; ++i) {
          CHECK(h.form(i, c) >= 0);
          CHECK(h.form(i, c) < h.form(k, c));
        }
      }
    }
  }

  TEST_CASE("smith form examples") {
    SmithForm id = smith_normal_form(IntMatrix::identity(2));
    CHECK(id.diagonal == IntMatrix::identity(2));
    SmithForm d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(d.diagonal == IntMatrix{{1, 0}, {0, 6}});
    CHECK(d.left * IntMatrix{{2, 0}, {0, 3}} * d.right == d.diagonal);
    SmithForm e = smith_normal_form(IntMatrix{{1, 0}, {2, 1}});
    CHECK(e.diagonal == IntMatrix::identity(2));
  }

  TEST_CASE("smith divisors match determinantal divisors") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
      IntMatrix a = random_matrix(rng, 3, 3 + t % 2, 5);
      SmithForm s = smith_normal_form(a);
      REQUIRE(is_unimodular(s.left));
      REQUIRE(is_unimodular(s.right));
      CHECK(s.left * a * s.right == s.diagonal);
      auto div = s.divisors();
      Integer prod = 1;
      for (std::size_t k = 0; k < div.size(); ++k) {
        CHECK(div[k] >= 0);
        if (k + 1 < div.size() && div[k] != 0) CHECK(div[k + 1] % div[k] == 0);
        prod *= div[k];
        CHECK(prod == determinantal_divisor(a, k + 1));
      }
    }
  }

  TEST_CASE("extend_to_basis examples") {
    std::vector<LatticeVector> one{{1, 0}};
    CHECK(extend_to_basis(2, one) == IntMatrix::identity(2));
    std::vector<LatticeVector> both{{1, 0}, {0, 1}};
    CHECK(extend_to_basis(2, both) == IntMatrix::identity(2));
    std::vector<LatticeVector> v{{1, 2}};
    IntMatrix b = extend_to_basis(2, v);
    CHECK(is_unimodular(b));
    CHECK(b.column(0) == LatticeVector{1, 2});
  }

  TEST_CASE("extend_to_basis errors") {
    std::vector<LatticeVector> non_primitive{{2, 0}};
    CHECK_THROWS_AS(extend_to_basis(2, non_primitive), LatticeError);
    std::vector<LatticeVector> index_two{{1, 0}, {1, 2}};
    CHECK_THROWS_AS(extend_to_basis(2, index_two), LatticeError);
    std::vector<LatticeVector> dependent{{1, 1}, {-1, -1}};
    CHECK_THROWS_AS(extend_to_basis(2, dependent), LatticeError);
  }

  TEST_CASE("extend_to_basis on random unimodular columns") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
      // random unimodular matrix from elementary operations
      IntMatrix u = IntMatrix::identity(3);
      std::uniform_int_distribution<int> idx(0, 2);
      std::uniform_int_distribution<long> k(-3, 3);
      for (int s = 0; s < 8; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i != j) u.add_col_multiple(i, j, k(rng));
      }
      std::size_t take = 1 + t % 3;
      std::vector<LatticeVector> cols;
      for (std::size_t c = 0; c < take; ++c) cols.push_back(u.column(c));
      IntMatrix b = extend_to_basis(3, cols);
      CHECK(is_unimodular(b));
      for (std::size_t c = 0; c < take; ++c) CHECK(b.column(c) == cols[c]);
      CHECK(extend_to_basis(3, cols) == b);
      IntMatrix inv = unimodular_inverse(b);
      CHECK(inv * b == IntMatrix::identity(3));
    }
  }
}
