#pragma once

#include <random>
#include <string>
#include <vector>

#include "toric/bundle.hpp"

namespace fixtures {

using namespace toric;

// mpq_class(n, d) does not reduce by itself.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline FanHandle p1() { return make_fan_handle(fans::projective_space(1)); }
inline FanHandle p2() { return make_fan_handle(fans::projective_space(2)); }
inline FanHandle f1() { return make_fan_handle(fans::hirzebruch(1)); }

inline RatMatrix rays_of(const Fan& fan, std::size_t cone) { return RatMatrix(fan.ray_matrix(fan.max_cone(cone))); }

// Tangent bundle of a complete smooth surface or curve: on sigma the frame
// dual to the coordinate characters, P(tau, sigma) = B_tau^{-1} B_sigma with
// B the matrix of ray generators.
inline BundleData tangent_bundle(const FanHandle& fan) {
  const Fan& f = fan->fan();
  const std::size_t m = f.num_max_cones();
  const std::size_t n = f.dim();
  std::vector<TorusHomomorphism> rho;
  std::vector<RatMatrix> inv;
  for (std::size_t s = 0; s < m; ++s) {
    inv.push_back(rays_of(f, s).inverse());
    std::vector<Character> xi;
    for (std::size_t i = 0; i < n; ++i) {
      Character c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = inv[s](i, j).get_num();
      xi.push_back(c);
    }
    rho.push_back(TorusHomomorphism::diagonal(xi));
  }
  std::vector<RatMatrix> p;
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) p.push_back(inv[t] * rays_of(f, s));
  return BundleData(fan, GroupDescriptor::general_linear(n), std::move(rho), std::move(p));
}

inline std::vector<Integer> random_ray_values(std::mt19937_64& rng, std::size_t d, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < d; ++i) out.emplace_back(u(rng));
  return out;
}

inline BundleData random_split(std::mt19937_64& rng, const FanHandle& fan, const GroupDescriptor& g,
                               long bound = 3) {
  std::vector<std::vector<Integer>> values;
  for (std::size_t k = 0; k < maximal_torus(g).rank; ++k)
    values.push_back(random_ray_values(rng, fan->fan().num_rays(), bound));
  return split_bundle(fan, g, values);
}

inline RatMatrix random_element(std::mt19937_64& rng, const GroupDescriptor& g, long bound = 3) {
  std::uniform_int_distribution<long> u(-bound, bound);
  std::uniform_int_distribution<long> den(1, 3);
  while (true) {
    RatMatrix x(g.rank(), g.rank());
    for (const auto& b : g.algebra().basis()) x = x + frac(u(rng), den(rng)) * b;
    if (x.invertible()) return x;
  }
}

inline Gauge random_gauge(std::mt19937_64& rng, const BundleData& d) {
  Gauge g;
  for (std::size_t s = 0; s < d.num_cones(); ++s) g.push_back(random_element(rng, d.group()));
  return g;
}

struct Sample {
  std::string label;
  BundleData original;
  Gauge gauge;
  BundleData gauged;
};

inline std::vector<GroupDescriptor> sample_groups() {
  return {GroupDescriptor::diagonal_torus(1),       GroupDescriptor::diagonal_torus(2),
          GroupDescriptor::general_linear(1),       GroupDescriptor::general_linear(2),
          GroupDescriptor::block_nilpotent({2, 1}), GroupDescriptor::block_nilpotent({2}),
          GroupDescriptor::general_linear(3)};
}

// Random split data over the sample groups plus the tangent bundle, each
// paired with a random gauge family.
inline std::vector<Sample> corpus(const FanHandle& fan, const std::string& name, std::size_t count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto groups = sample_groups();
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    BundleData d = (i % 10 == 9) ? tangent_bundle(fan) : random_split(rng, fan, groups[i % groups.size()]);
    Gauge g = random_gauge(rng, d);
    BundleData gd = apply_gauge(d, g);
    out.push_back({name + "#" + std::to_string(i) + " " + d.group().str(), d, std::move(g), std::move(gd)});
  }
  return out;
}

}  // namespace fixtures
