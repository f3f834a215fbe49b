#pragma once

// Torus-equivariant principal G-bundles on a smooth toric variety, encoded by
// admissible collections {rho_sigma, P(tau, sigma)} over the maximal cones:
// rho_sigma : T -> G are algebraic homomorphisms and P(tau, sigma) in G is the
// value at a fixed point of the dense orbit of the transition function
//
//   phi_{tau sigma}(t) = rho_tau(t) P(tau, sigma) rho_sigma(t)^{-1}.
//
// Gauge families {g_sigma} act by rho -> g^{-1} rho g and
// P(tau, sigma) -> g_tau^{-1} P(tau, sigma) g_sigma; their orbits are the
// isomorphism classes of bundles.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/group.hpp"
#include "toric/laurent.hpp"
#include "toric/orbit.hpp"

namespace toric {

class BundleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A validated fan together with the per-cone data every bundle over it
/// needs: common faces of maximal cones and canonical splittings.
class FanContext {
 public:
  /// Throws BundleError when the fan has violations.
  explicit FanContext(Fan fan);

  const Fan& fan() const { return fan_; }
  const FanCertificate& certificate() const { return certificate_; }
  std::size_t num_cones() const { return fan_.num_max_cones(); }
  const Cone& common_face(std::size_t a, std::size_t b) const;
  const ConeSplitting& splitting(std::size_t cone) const { return splittings_.at(cone); }

 private:
  Fan fan_;
  FanCertificate certificate_;
  std::vector<Cone> faces_;  // num_cones^2, symmetric
  std::vector<ConeSplitting> splittings_;
};

using FanHandle = std::shared_ptr<const FanContext>;
FanHandle make_fan_handle(Fan fan);

/// rho(t) = h diag(chi^{w_1}(t), ..., chi^{w_r}(t)) h^{-1}. Every algebraic
/// homomorphism T -> GL(r) has this form; h = 1 is the Kaneyama case.
class TorusHomomorphism {
 public:
  TorusHomomorphism() = default;
  TorusHomomorphism(std::vector<Character> weights, RatMatrix conjugator);
  static TorusHomomorphism diagonal(std::vector<Character> weights);

  std::size_t rank() const { return weights_.size(); }
  std::size_t lattice_dim() const { return weights_.empty() ? 0 : weights_.front().dim(); }
  const std::vector<Character>& weights() const { return weights_; }
  const RatMatrix& conjugator() const { return conjugator_; }
  const RatMatrix& conjugator_inverse() const { return conjugator_inv_; }
  bool is_kaneyama() const { return conjugator_.is_identity(); }
  /// The multiset of characters, sorted.
  std::vector<Character> sorted_weights() const;

  LaurentMatrix matrix() const;
  LaurentMatrix inverse_matrix() const;
  RatMatrix evaluate(std::span<const Rational> point) const;
  /// g^{-1} rho g.
  TorusHomomorphism conjugate(const RatMatrix& g) const;
  /// (chi, E_chi) with E_chi the projector onto the chi-isotypic subspace,
  /// sorted by chi.
  std::vector<std::pair<Character, RatMatrix>> isotypic_projectors() const;

  friend bool operator==(const TorusHomomorphism& a, const TorusHomomorphism& b) {
    return a.weights_ == b.weights_ && a.conjugator_ == b.conjugator_;
  }

 private:
  std::vector<Character> weights_;
  RatMatrix conjugator_;
  RatMatrix conjugator_inv_;
};

using Gauge = std::vector<RatMatrix>;  // g_sigma, indexed by maximal cone

class BundleData {
 public:
  BundleData() = default;
  /// `transitions` holds P(tau, sigma) at index tau * m + sigma. Only shapes
  /// are checked here; the admissibility conditions are reported by validate.
  BundleData(FanHandle fan, GroupDescriptor group, std::vector<TorusHomomorphism> rho,
             std::vector<RatMatrix> transitions);

  /// P(tau, sigma) = P(tau, base) P(sigma, base)^{-1}; `to_base[sigma]` is
  /// P(sigma, base).
  static BundleData from_base(FanHandle fan, GroupDescriptor group, std::vector<TorusHomomorphism> rho,
                              std::size_t base, const std::vector<RatMatrix>& to_base);
  /// Kaneyama data with P identically 1.
  static BundleData diagonal(FanHandle fan, GroupDescriptor group, std::vector<std::vector<Character>> xi);

  const FanHandle& fan_handle() const { return fan_; }
  const Fan& fan() const { return fan_->fan(); }
  const GroupDescriptor& group() const { return group_; }
  std::size_t rank() const { return group_.rank(); }
  std::size_t num_cones() const { return rho_.size(); }
  const std::vector<TorusHomomorphism>& rho() const { return rho_; }
  const TorusHomomorphism& rho(std::size_t sigma) const { return rho_.at(sigma); }
  const RatMatrix& P(std::size_t tau, std::size_t sigma) const;
  const std::vector<RatMatrix>& transitions() const { return transitions_; }
  bool is_kaneyama_form() const;
  bool P_is_trivial() const;

  friend bool operator==(const BundleData& a, const BundleData& b);

 private:
  FanHandle fan_;
  GroupDescriptor group_;
  std::vector<TorusHomomorphism> rho_;
  std::vector<RatMatrix> transitions_;
};

enum class Condition {
  group_membership = 0,  // rho_sigma and P(tau, sigma) are G-valued
  factorization = 1,     // rho_sigma factors through T -> T_sigma
  regularity = 2,        // phi_{tau sigma} is regular on X_{sigma ∩ tau}
  normalization = 3,     // P(sigma, sigma) = 1
  cocycle = 4,           // P(tau, sigma) P(sigma, delta) P(delta, tau) = 1
};

std::string condition_name(Condition c);

struct BundleViolation {
  Condition condition;
  std::vector<std::size_t> cones;
  std::string message;
};

struct ValidationReport {
  std::vector<BundleViolation> violations;  // sorted by (condition, cones)

  bool valid() const { return violations.empty(); }
  bool passed(Condition c) const;
};

ValidationReport validate(const BundleData& d);

/// chi^m is regular on the chart of `face`: <m, v> >= 0 on every generator.
bool monomial_regular_on(const Fan& fan, const Cone& face, const Character& m);

/// rho_tau(t) P(tau, sigma) rho_sigma(t)^{-1} as a Laurent matrix.
LaurentMatrix transition_function(const BundleData& d, std::size_t tau, std::size_t sigma);

/// rho -> g^{-1} rho g, P(tau, sigma) -> g_tau^{-1} P(tau, sigma) g_sigma.
/// Throws BundleError when some g_sigma is not in G.
BundleData apply_gauge(const BundleData& d, const Gauge& g);
/// Checks both gauge identities exactly and that every g_sigma lies in G.
bool verify_gauge(const BundleData& from, const BundleData& to, const Gauge& g);
Gauge compose_gauges(const Gauge& first, const Gauge& second);
Gauge invert_gauge(const Gauge& g);
Gauge identity_gauge(std::size_t num_cones, std::size_t rank);

struct Normalization {
  BundleData data;  // P identically 1
  Gauge gauge;      // data = apply_gauge(input, gauge)
  std::size_t base = 0;
};

/// Gauge g_sigma = P(sigma, base); requires valid input. The base defaults
/// to the maximal cone with the least ray set.
Normalization normalize_gauge(const BundleData& d, std::optional<std::size_t> base = std::nullopt);

struct SimultaneousDiagonalization {
  RatMatrix basis;                                    // columns are joint eigenvectors
  std::vector<std::vector<Character>> joint_weights;  // per column, one weight per cone
};

/// Common eigenbasis of a commuting family of homomorphisms. Returns the
/// identity basis when every member is already diagonal, and nullopt when
/// the family does not commute.
std::optional<SimultaneousDiagonalization> simultaneously_diagonalize(const std::vector<TorusHomomorphism>& family);

/// Some g in G with g^{-1} a_sigma g = b_sigma for every sigma, if found.
std::optional<RatMatrix> conjugating_element(const GroupDescriptor& group, const std::vector<TorusHomomorphism>& a,
                                             const std::vector<TorusHomomorphism>& b);

struct EquivalenceResult {
  bool equivalent = false;
  Gauge witness;  // b = apply_gauge(a, witness) when equivalent
  std::string reason;
};

/// Decides equivalence of two valid data over the same fan and group. A
/// positive answer always carries a re-verified witness.
EquivalenceResult equivalent(const BundleData& a, const BundleData& b);

struct LiteralKaneyamaResult {
  bool holds = false;
  std::vector<std::vector<std::size_t>> permutations;  // per cone: a_i = b_{gamma(i)}
  Gauge gauge;                                         // P_b = g^{-1} P_a g on Kaneyama forms
  std::string reason;
};

/// Diagnostic: per-cone weight permutations and a transition gauge, found
/// independently of each other.
LiteralKaneyamaResult kaneyama_equivalence_literal(const BundleData& a, const BundleData& b);

/// Equivalent datum with every conjugator the identity: rho_sigma valued
/// in the diagonal torus. Throws BundleError when no such gauge in G is
/// found.
BundleData kaneyama_form(const BundleData& d);

/// Normalized at the least maximal cone; split GL data is additionally
/// diagonalized with joint weights sorted lexicographically.
BundleData canonical_form(const BundleData& d);

struct PermutationMatch {
  std::optional<std::vector<std::size_t>> gamma;  // xi^sigma_i ~ xi^tau_{gamma(i)}
  std::string failure;
};

/// Lexicographically least gamma with <xi^sigma_i - xi^tau_{gamma(i)}, v> = 0
/// for every ray v shared by sigma and tau.
PermutationMatch permutation_match(const BundleData& d, std::size_t sigma, std::size_t tau);

struct TransitionReport {
  std::size_t num_cones = 0;
  std::vector<LaurentMatrix> phi;  // phi[tau * m + sigma]
  bool cocycle = true;
  bool equivariance = true;
  bool unit_determinants = true;
  std::vector<std::string> failures;

  const LaurentMatrix& at(std::size_t tau, std::size_t sigma) const { return phi.at(tau * num_cones + sigma); }
  bool all_hold() const { return cocycle && equivariance && unit_determinants; }
};

TransitionReport transition_matrices(const BundleData& d);

/// phi_{tau sigma} at a point of the dense orbit (all coordinates nonzero).
RatMatrix evaluate_transition(const BundleData& d, std::size_t tau, std::size_t sigma,
                              std::span<const Rational> point);

/// Rank-one torus datum with <xi^sigma, v_eta> = a(eta) on every ray of every
/// maximal cone. Needs full-dimensional smooth maximal cones.
BundleData line_bundle_from_ray_values(const FanHandle& fan, std::span<const Integer> ray_values);
std::vector<Integer> line_bundle_to_ray_values(const BundleData& d);

/// Split datum over the maximal torus of `group`: factor k of the torus gets
/// the line bundle with ray values factor_ray_values[k].
BundleData split_bundle(const FanHandle& fan, const GroupDescriptor& group,
                        const std::vector<std::vector<Integer>>& factor_ray_values);

struct TorusReduction {
  BundleData data;        // over torus(k), P identically 1
  BundleData normalized;  // input after gauge normalization, K0-valued
  std::vector<std::size_t> class_of_line;
};

/// Reduction to the maximal torus; needs K0 normal in G.
TorusReduction reduce_structure_group(const BundleData& d);

/// Centralizer of the normalized homomorphisms inside G, expressed in the
/// chart of the base cone.
SubgroupDescription automorphism_subgroup(const BundleData& d);

}  // namespace toric
