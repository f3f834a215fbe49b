#pragma once

// Fans of smooth simplicial cones in N_R. A cone is stored by the indices of
// its ray generators; only the maximal cones are kept, and lower faces are
// subsets of their ray sets.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

class FanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Cone {
 public:
  Cone() = default;
  /// Sorts and deduplicates the indices.
  explicit Cone(std::vector<std::size_t> rays);
  Cone(std::initializer_list<std::size_t> rays) : Cone(std::vector<std::size_t>(rays)) {}

  const std::vector<std::size_t>& rays() const { return rays_; }
  std::size_t dim() const { return rays_.size(); }
  bool is_zero() const { return rays_.empty(); }
  bool contains_ray(std::size_t ray) const;
  /// Ray-set inclusion (face relation for simplicial cones).
  bool is_face_of(const Cone& other) const;
  Cone shared_rays(const Cone& other) const;

  std::string str() const;

  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone&, const Cone&) = default;

 private:
  std::vector<std::size_t> rays_;
};

class Fan {
 public:
  Fan() = default;
  /// Checks only shapes: ray dimensions and cone indices in range. Geometric
  /// conditions are reported by validate_fan.
  Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<Cone> max_cones, bool asserted_complete = false);

  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  const Cone& max_cone(std::size_t i) const { return max_cones_.at(i); }
  std::size_t num_max_cones() const { return max_cones_.size(); }
  bool asserted_complete() const { return asserted_complete_; }

  std::vector<LatticeVector> generators(const Cone& c) const;
  IntMatrix ray_matrix(const Cone& c) const;
  /// True if c is a face of some maximal cone.
  bool in_face_closure(const Cone& c) const;
  /// Index of the maximal cone with the lexicographically least ray set.
  std::size_t least_max_cone() const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> max_cones_;
  bool asserted_complete_ = false;
};

struct FanViolation {
  std::string kind;  // e.g. "non_primitive_ray", "not_smooth", "improper_intersection"
  std::vector<std::size_t> indices;
  std::string message;
};

struct FanCertificate {
  /// Per maximal cone: unimodular completion of its generators (empty
  /// matrix when the cone is not smooth).
  std::vector<IntMatrix> smoothness_witness;
  /// Common face of each unordered pair (i < j) of maximal cones.
  std::map<std::pair<std::size_t, std::size_t>, Cone> intersections;
  std::vector<FanViolation> violations;

  bool valid() const { return violations.empty(); }
};

FanCertificate validate_fan(const Fan& fan);

/// Common face of two cones of the fan. Throws FanError when the geometric
/// intersection is larger than the cone on the shared rays.
Cone intersect(const Fan& fan, const Cone& a, const Cone& b);

bool all_max_cones_full_dim(const Fan& fan);

namespace fans {

Fan projective_space(std::size_t n);
Fan affine_space(std::size_t n);
Fan hirzebruch(long a);
Fan product(const Fan& f, const Fan& g);

}  // namespace fans

}  // namespace toric
