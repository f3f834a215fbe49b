#include "toric/fan.hpp"

#include <algorithm>
#include <set>

#include "toric/linear_program.hpp"

namespace toric {

Cone::Cone(std::vector<std::size_t> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end());
  rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
}

bool Cone::contains_ray(std::size_t ray) const { return std::binary_search(rays_.begin(), rays_.end(), ray); }

bool Cone::is_face_of(const Cone& other) const {
  return std::includes(other.rays_.begin(), other.rays_.end(), rays_.begin(), rays_.end());
}

Cone Cone::shared_rays(const Cone& other) const {
  std::vector<std::size_t> common;
  std::set_intersection(rays_.begin(), rays_.end(), other.rays_.begin(), other.rays_.end(),
                        std::back_inserter(common));
  return Cone(std::move(common));
}

std::string Cone::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(rays_[i]);
  }
  return s + "}";
}

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<Cone> max_cones, bool asserted_complete)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)), asserted_complete_(asserted_complete) {
  if (dim_ == 0) throw FanError("fan dimension must be at least 1");
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].dim() != dim_)
      throw FanError("ray " + std::to_string(i) + " has " + std::to_string(rays_[i].dim()) +
                     " coordinates, expected " + std::to_string(dim_));
  for (std::size_t c = 0; c < max_cones_.size(); ++c)
    for (auto r : max_cones_[c].rays())
      if (r >= rays_.size())
        throw FanError("cone " + std::to_string(c) + " references ray " + std::to_string(r) + " but only " +
                       std::to_string(rays_.size()) + " rays exist");
}

std::vector<LatticeVector> Fan::generators(const Cone& c) const {
  std::vector<LatticeVector> out;
  out.reserve(c.dim());
  for (auto r : c.rays()) out.push_back(ray(r));
  return out;
}

IntMatrix Fan::ray_matrix(const Cone& c) const {
  auto gens = generators(c);
  return IntMatrix::from_columns(dim_, gens);
}

bool Fan::in_face_closure(const Cone& c) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(), [&](const Cone& m) { return c.is_face_of(m); });
}

std::size_t Fan::least_max_cone() const {
  if (max_cones_.empty()) throw FanError("fan has no maximal cones");
  return static_cast<std::size_t>(std::min_element(max_cones_.begin(), max_cones_.end()) - max_cones_.begin());
}

namespace {

// Is there a point of a ∩ b carrying positive weight on a ray that the two
// cones do not share? Both cones must be simplicial.
bool has_improper_overlap(const Fan& fan, const Cone& a, const Cone& b) {
  Cone shared = a.shared_rays(b);
  std::vector<std::size_t> only_a, only_b;
  for (auto r : a.rays())
    if (!shared.contains_ray(r)) only_a.push_back(r);
  for (auto r : b.rays())
    if (!shared.contains_ray(r)) only_b.push_back(r);
  if (only_a.empty() || only_b.empty()) return false;

  // Variables: lambda (only_a), mu (only_b), nu+ and nu- (shared).
  const std::size_t n = fan.dim();
  const std::size_t vars = only_a.size() + only_b.size() + 2 * shared.dim();
  RatMatrix eq(n + 1, vars);
  std::vector<Rational> rhs(n + 1, Rational(0));
  std::size_t col = 0;
  for (auto r : only_a) {
    for (std::size_t i = 0; i < n; ++i) eq(i, col) = Rational(fan.ray(r)[i]);
    eq(n, col) = 1;
    ++col;
  }
  for (auto r : only_b) {
    for (std::size_t i = 0; i < n; ++i) eq(i, col) = Rational(-fan.ray(r)[i]);
    eq(n, col) = 1;
    ++col;
  }
  for (auto r : shared.rays()) {
    for (std::size_t i = 0; i < n; ++i) {
      eq(i, col) = Rational(fan.ray(r)[i]);
      eq(i, col + 1) = Rational(-fan.ray(r)[i]);
    }
    col += 2;
  }
  rhs[n] = 1;
  return nonnegative_solution(eq, rhs).has_value();
}

bool cone_is_smooth(const Fan& fan, const Cone& c, IntMatrix* witness) {
  try {
    auto gens = fan.generators(c);
    IntMatrix basis = extend_to_basis(fan.dim(), gens);
    if (witness) *witness = std::move(basis);
    return true;
  } catch (const LatticeError&) {
    return false;
  }
}

}  // namespace

FanCertificate validate_fan(const Fan& fan) {
  FanCertificate cert;
  auto violation = [&](std::string kind, std::vector<std::size_t> idx, std::string msg) {
    cert.violations.push_back({std::move(kind), std::move(idx), std::move(msg)});
  };

  std::vector<bool> ray_ok(fan.num_rays(), true);
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    const auto& v = fan.ray(i);
    if (v.is_zero()) {
      violation("zero_ray", {i}, "ray " + std::to_string(i) + " is the zero vector");
      ray_ok[i] = false;
    } else if (!is_primitive(v)) {
      violation("non_primitive_ray", {i}, "ray " + std::to_string(i) + " " + v.str() + " is not primitive");
      ray_ok[i] = false;
    }
    for (std::size_t j = 0; j < i; ++j)
      if (fan.ray(j) == v) violation("duplicate_ray", {j, i}, "rays " + std::to_string(j) + " and " +
                                                                  std::to_string(i) + " coincide");
  }
  std::vector<bool> used(fan.num_rays(), false);
  for (const auto& c : fan.max_cones())
    for (auto r : c.rays()) used[r] = true;
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (!used[i]) violation("unused_ray", {i}, "ray " + std::to_string(i) + " lies in no maximal cone");

  if (fan.num_max_cones() == 0) violation("no_cones", {}, "fan has no maximal cones");

  std::vector<bool> smooth(fan.num_max_cones(), false);
  cert.smoothness_witness.resize(fan.num_max_cones());
  for (std::size_t c = 0; c < fan.num_max_cones(); ++c) {
    const Cone& cone = fan.max_cone(c);
    bool rays_ok = std::all_of(cone.rays().begin(), cone.rays().end(), [&](std::size_t r) { return ray_ok[r]; });
    if (!rays_ok) continue;
    if (cone_is_smooth(fan, cone, &cert.smoothness_witness[c])) {
      smooth[c] = true;
    } else {
      std::string det;
      if (cone.dim() == fan.dim()) det = " (determinant " + to_string(fan.ray_matrix(cone).determinant()) + ")";
      violation("not_smooth", {c}, "cone " + std::to_string(c) + " " + cone.str() +
                                       ": generators do not extend to a lattice basis" + det);
    }
  }

  for (std::size_t a = 0; a < fan.num_max_cones(); ++a)
    for (std::size_t b = a + 1; b < fan.num_max_cones(); ++b) {
      const Cone& ca = fan.max_cone(a);
      const Cone& cb = fan.max_cone(b);
      if (ca == cb) {
        violation("duplicate_cone", {a, b}, "maximal cones " + std::to_string(a) + " and " + std::to_string(b) +
                                                " coincide");
        continue;
      }
      if (ca.is_face_of(cb) || cb.is_face_of(ca)) {
        violation("not_maximal", {a, b}, "cone " + std::to_string(ca.is_face_of(cb) ? a : b) +
                                             " is a face of cone " + std::to_string(ca.is_face_of(cb) ? b : a));
      }
      if (!smooth[a] || !smooth[b]) continue;
      if (has_improper_overlap(fan, ca, cb)) {
        violation("improper_intersection", {a, b}, "cones " + std::to_string(a) + " and " + std::to_string(b) +
                                                        " meet outside their common face " +
                                                        ca.shared_rays(cb).str());
      } else {
        cert.intersections[{a, b}] = ca.shared_rays(cb);
      }
    }
  return cert;
}

Cone intersect(const Fan& fan, const Cone& a, const Cone& b) {
  if (!fan.in_face_closure(a) || !fan.in_face_closure(b)) throw FanError("cone is not in the fan");
  if (a == b) return a;
  if (has_improper_overlap(fan, a, b))
    throw FanError("cones " + a.str() + " and " + b.str() + " do not meet in a common face");
  return a.shared_rays(b);
}

bool all_max_cones_full_dim(const Fan& fan) {
  return std::all_of(fan.max_cones().begin(), fan.max_cones().end(),
                     [&](const Cone& c) { return c.dim() == fan.dim(); });
}

namespace fans {

namespace {

LatticeVector unit(std::size_t n, std::size_t i, long value = 1) {
  LatticeVector v(n);
  v[i] = value;
  return v;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<Cone>& out) {
  if (cur.size() == k) {
    out.emplace_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Fan projective_space(std::size_t n) {
  if (n == 0) throw FanError("projective space needs n >= 1");
  std::vector<LatticeVector> rays;
  LatticeVector last(n);
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back(unit(n, i));
    last[i] = -1;
  }
  rays.push_back(last);
  std::vector<Cone> cones;
  std::vector<std::size_t> cur;
  subsets(n + 1, n, 0, cur, cones);
  return Fan(n, std::move(rays), std::move(cones), true);
}

Fan affine_space(std::size_t n) {
  if (n == 0) throw FanError("affine space needs n >= 1");
  std::vector<LatticeVector> rays;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < n; ++i) {
    rays.push_back(unit(n, i));
    all.push_back(i);
  }
  return Fan(n, std::move(rays), {Cone(all)}, false);
}

Fan hirzebruch(long a) {
  if (a < 0) throw FanError("Hirzebruch surface needs a >= 0");
  std::vector<LatticeVector> rays = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
  std::vector<Cone> cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  return Fan(2, std::move(rays), std::move(cones), true);
}

Fan product(const Fan& f, const Fan& g) {
  std::size_t n = f.dim() + g.dim();
  std::vector<LatticeVector> rays;
  for (const auto& v : f.rays()) {
    LatticeVector w(n);
    for (std::size_t i = 0; i < f.dim(); ++i) w[i] = v[i];
    rays.push_back(std::move(w));
  }
  for (const auto& v : g.rays()) {
    LatticeVector w(n);
    for (std::size_t i = 0; i < g.dim(); ++i) w[f.dim() + i] = v[i];
    rays.push_back(std::move(w));
  }
  std::vector<Cone> cones;
  for (const auto& a : f.max_cones())
    for (const auto& b : g.max_cones()) {
      std::vector<std::size_t> idx = a.rays();
      for (auto r : b.rays()) idx.push_back(f.num_rays() + r);
      cones.emplace_back(std::move(idx));
    }
  return Fan(n, std::move(rays), std::move(cones), f.asserted_complete() && g.asserted_complete());
}

}  // namespace fans

}  // namespace toric
