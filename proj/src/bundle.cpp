#include "toric/bundle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

namespace toric {

// ---------------------------------------------------------------------------
// FanContext

FanContext::FanContext(Fan fan) : fan_(std::move(fan)), certificate_(validate_fan(fan_)) {
  if (!certificate_.valid()) throw BundleError("invalid fan: " + certificate_.violations.front().message);
  const std::size_t m = fan_.num_max_cones();
  faces_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) faces_[a * m + b] = fan_.max_cone(a);
      else faces_[a * m + b] = certificate_.intersections.at({std::min(a, b), std::max(a, b)});
    }
  splittings_.reserve(m);
  for (std::size_t c = 0; c < m; ++c)
    splittings_.emplace_back(fan_.max_cone(c), certificate_.smoothness_witness[c]);
}

const Cone& FanContext::common_face(std::size_t a, std::size_t b) const {
  return faces_.at(a * num_cones() + b);
}

FanHandle make_fan_handle(Fan fan) { return std::make_shared<const FanContext>(std::move(fan)); }

// ---------------------------------------------------------------------------
// TorusHomomorphism

TorusHomomorphism::TorusHomomorphism(std::vector<Character> weights, RatMatrix conjugator)
    : weights_(std::move(weights)), conjugator_(std::move(conjugator)) {
  if (weights_.empty()) throw BundleError("homomorphism needs at least one weight");
  for (const auto& w : weights_)
    if (w.dim() != weights_.front().dim()) throw BundleError("weights of one homomorphism differ in rank");
  if (conjugator_.rows() != weights_.size() || !conjugator_.square())
    throw BundleError("conjugator must be " + std::to_string(weights_.size()) + "x" +
                      std::to_string(weights_.size()));
  try {
    conjugator_inv_ = conjugator_.inverse();
  } catch (const std::domain_error&) {
    throw BundleError("conjugator is singular");
  }
}

TorusHomomorphism TorusHomomorphism::diagonal(std::vector<Character> weights) {
  std::size_t r = weights.size();
  return TorusHomomorphism(std::move(weights), RatMatrix::identity(r));
}

std::vector<Character> TorusHomomorphism::sorted_weights() const {
  auto w = weights_;
  std::sort(w.begin(), w.end());
  return w;
}

LaurentMatrix TorusHomomorphism::matrix() const {
  auto d = LaurentMatrix::diagonal_monomials(weights_, lattice_dim());
  if (is_kaneyama()) return d;
  return LaurentMatrix::constant(conjugator_, lattice_dim()) * d *
         LaurentMatrix::constant(conjugator_inv_, lattice_dim());
}

LaurentMatrix TorusHomomorphism::inverse_matrix() const {
  std::vector<Character> neg;
  for (const auto& w : weights_) neg.push_back(-w);
  auto d = LaurentMatrix::diagonal_monomials(neg, lattice_dim());
  if (is_kaneyama()) return d;
  return LaurentMatrix::constant(conjugator_, lattice_dim()) * d *
         LaurentMatrix::constant(conjugator_inv_, lattice_dim());
}

RatMatrix TorusHomomorphism::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> values;
  for (const auto& w : weights_) values.push_back(LaurentPolynomial::monomial(w).evaluate(point));
  return conjugator_ * RatMatrix::diagonal(values) * conjugator_inv_;
}

TorusHomomorphism TorusHomomorphism::conjugate(const RatMatrix& g) const {
  return TorusHomomorphism(weights_, g.inverse() * conjugator_);
}

std::vector<std::pair<Character, RatMatrix>> TorusHomomorphism::isotypic_projectors() const {
  std::vector<std::pair<Character, RatMatrix>> out;
  for (const auto& chi : sorted_weights()) {
    if (!out.empty() && out.back().first == chi) continue;
    std::vector<Rational> mask;
    for (const auto& w : weights_) mask.emplace_back(w == chi ? 1 : 0);
    out.emplace_back(chi, conjugator_ * RatMatrix::diagonal(mask) * conjugator_inv_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// BundleData

BundleData::BundleData(FanHandle fan, GroupDescriptor group, std::vector<TorusHomomorphism> rho,
                       std::vector<RatMatrix> transitions)
    : fan_(std::move(fan)), group_(std::move(group)), rho_(std::move(rho)), transitions_(std::move(transitions)) {
  if (!fan_) throw BundleError("bundle data needs a fan");
  const std::size_t m = fan_->num_cones();
  const std::size_t r = group_.rank();
  if (rho_.size() != m)
    throw BundleError("expected " + std::to_string(m) + " homomorphisms, got " + std::to_string(rho_.size()));
  for (std::size_t s = 0; s < m; ++s) {
    if (rho_[s].rank() != r)
      throw BundleError("homomorphism on cone " + std::to_string(s) + " has rank " +
                        std::to_string(rho_[s].rank()) + ", group acts on rank " + std::to_string(r));
    if (rho_[s].lattice_dim() != fan_->fan().dim())
      throw BundleError("weights on cone " + std::to_string(s) + " are not characters of the fan's torus");
  }
  if (transitions_.size() != m * m) throw BundleError("expected one transition value per ordered pair of cones");
  for (const auto& p : transitions_)
    if (p.rows() != r || p.cols() != r) throw BundleError("transition value has the wrong size");
}

BundleData BundleData::from_base(FanHandle fan, GroupDescriptor group, std::vector<TorusHomomorphism> rho,
                                 std::size_t base, const std::vector<RatMatrix>& to_base) {
  if (!fan) throw BundleError("bundle data needs a fan");
  const std::size_t m = fan->num_cones();
  const std::size_t r = group.rank();
  if (base >= m) throw BundleError("base cone " + std::to_string(base) + " out of range");
  if (to_base.size() != m) throw BundleError("expected one transition value per cone");
  if (!to_base[base].is_identity()) throw BundleError("P(base, base) must be the identity");
  std::vector<RatMatrix> inverses;
  for (std::size_t s = 0; s < m; ++s) {
    if (to_base[s].rows() != r || to_base[s].cols() != r) throw BundleError("transition value has the wrong size");
    try {
      inverses.push_back(to_base[s].inverse());
    } catch (const std::domain_error&) {
      throw BundleError("P(" + std::to_string(s) + ", base) is singular");
    }
  }
  std::vector<RatMatrix> full;
  full.reserve(m * m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) full.push_back(t == s ? RatMatrix::identity(r) : to_base[t] * inverses[s]);
  return BundleData(std::move(fan), std::move(group), std::move(rho), std::move(full));
}

BundleData BundleData::diagonal(FanHandle fan, GroupDescriptor group, std::vector<std::vector<Character>> xi) {
  std::vector<TorusHomomorphism> rho;
  for (auto& w : xi) rho.push_back(TorusHomomorphism::diagonal(std::move(w)));
  const std::size_t m = rho.size();
  std::vector<RatMatrix> p(m * m, RatMatrix::identity(group.rank()));
  return BundleData(std::move(fan), std::move(group), std::move(rho), std::move(p));
}

const RatMatrix& BundleData::P(std::size_t tau, std::size_t sigma) const {
  if (tau >= num_cones() || sigma >= num_cones()) throw BundleError("cone index out of range");
  return transitions_[tau * num_cones() + sigma];
}

bool BundleData::is_kaneyama_form() const {
  return std::all_of(rho_.begin(), rho_.end(), [](const TorusHomomorphism& h) { return h.is_kaneyama(); });
}

bool BundleData::P_is_trivial() const {
  return std::all_of(transitions_.begin(), transitions_.end(), [](const RatMatrix& p) { return p.is_identity(); });
}

bool operator==(const BundleData& a, const BundleData& b) {
  bool same_fan = a.fan_ == b.fan_ || (a.fan_ && b.fan_ && a.fan() == b.fan());
  return same_fan && a.group_ == b.group_ && a.rho_ == b.rho_ && a.transitions_ == b.transitions_;
}

// ---------------------------------------------------------------------------
// Validation

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::group_membership: return "group_membership";
    case Condition::factorization: return "factorization";
    case Condition::regularity: return "regularity";
    case Condition::normalization: return "normalization";
    case Condition::cocycle: return "cocycle";
  }
  return "unknown";
}

bool ValidationReport::passed(Condition c) const {
  return std::none_of(violations.begin(), violations.end(),
                      [c](const BundleViolation& v) { return v.condition == c; });
}

bool monomial_regular_on(const Fan& fan, const Cone& face, const Character& m) {
  for (auto r : face.rays())
    if (pairing(m, fan.ray(r)) < 0) return false;
  return true;
}

LaurentMatrix transition_function(const BundleData& d, std::size_t tau, std::size_t sigma) {
  const auto& rt = d.rho(tau);
  const auto& rs = d.rho(sigma);
  const std::size_t r = d.rank();
  const std::size_t n = d.fan().dim();
  // h_tau [p~_ij chi^{xi^tau_i - xi^sigma_j}] h_sigma^{-1}, p~ = h_tau^{-1} P h_sigma
  RatMatrix pt = rt.conjugator_inverse() * d.P(tau, sigma) * rs.conjugator();
  LaurentMatrix inner(r, r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (pt(i, j) != 0) inner(i, j).add_term(rt.weights()[i] - rs.weights()[j], pt(i, j));
  if (rt.is_kaneyama() && rs.is_kaneyama()) return inner;
  return LaurentMatrix::constant(rt.conjugator(), n) * inner * LaurentMatrix::constant(rs.conjugator_inverse(), n);
}

namespace {

bool laurent_in_span(const LaurentMatrix& m, const MatrixSpan& span) {
  for (const auto& chi : m.support())
    if (!span.contains(m.coefficient(chi))) return false;
  return true;
}

std::string pair_str(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

ValidationReport validate(const BundleData& d) {
  ValidationReport report;
  auto add = [&](Condition c, std::vector<std::size_t> cones, std::string msg) {
    report.violations.push_back({c, std::move(cones), std::move(msg)});
  };
  const auto& ctx = *d.fan_handle();
  const Fan& fan = d.fan();
  const std::size_t m = d.num_cones();
  const auto& group = d.group();

  for (std::size_t s = 0; s < m; ++s) {
    if (!laurent_in_span(d.rho(s).matrix(), group.algebra()))
      add(Condition::group_membership, {s}, "rho on cone " + std::to_string(s) + " is not " + group.str() + "-valued");
    for (const auto& w : d.rho(s).weights())
      if (!character_factors(ctx.splitting(s), w))
        add(Condition::factorization, {s},
            "weight " + w.str() + " on cone " + std::to_string(s) + " does not factor through the stabilizer torus");
  }

  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) {
      if (!contains(group, d.P(t, s)))
        add(Condition::group_membership, {t, s}, "P" + pair_str(t, s) + " is not in " + group.str());
      if (t == s && !d.P(t, s).is_identity())
        add(Condition::normalization, {t}, "P" + pair_str(t, t) + " is not the identity");
      const Cone& face = ctx.common_face(t, s);
      LaurentMatrix phi = transition_function(d, t, s);
      for (const auto& chi : phi.support())
        if (!monomial_regular_on(fan, face, chi)) {
          add(Condition::regularity, {t, s},
              "transition" + pair_str(t, s) + " has monomial x^" + chi.str() + " with a pole along face " +
                  face.str());
          break;
        }
    }

  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) {
      RatMatrix ts = d.P(t, s);
      for (std::size_t u = 0; u < m; ++u)
        if (!(ts * d.P(s, u) * d.P(u, t)).is_identity())
          add(Condition::cocycle, {t, s, u},
              "P" + pair_str(t, s) + " P" + pair_str(s, u) + " P" + pair_str(u, t) + " is not the identity");
    }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const BundleViolation& a, const BundleViolation& b) {
                     return std::tie(a.condition, a.cones) < std::tie(b.condition, b.cones);
                   });
  return report;
}

// ---------------------------------------------------------------------------
// Gauges

BundleData apply_gauge(const BundleData& d, const Gauge& g) {
  const std::size_t m = d.num_cones();
  if (g.size() != m) throw BundleError("gauge needs one element per maximal cone");
  std::vector<RatMatrix> inv;
  for (std::size_t s = 0; s < m; ++s) {
    if (!contains(d.group(), g[s])) throw BundleError("gauge element on cone " + std::to_string(s) + " is not in " + d.group().str());
    inv.push_back(g[s].inverse());
  }
  std::vector<TorusHomomorphism> rho;
  for (std::size_t s = 0; s < m; ++s)
    rho.emplace_back(d.rho(s).weights(), inv[s] * d.rho(s).conjugator());
  std::vector<RatMatrix> p;
  p.reserve(m * m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) p.push_back(inv[t] * d.P(t, s) * g[s]);
  return BundleData(d.fan_handle(), d.group(), std::move(rho), std::move(p));
}

bool verify_gauge(const BundleData& from, const BundleData& to, const Gauge& g) {
  const std::size_t m = from.num_cones();
  if (to.num_cones() != m || g.size() != m || !(from.group() == to.group())) return false;
  if (!(from.fan_handle() == to.fan_handle() || from.fan() == to.fan())) return false;
  const std::size_t n = from.fan().dim();
  std::vector<RatMatrix> inv;
  for (std::size_t s = 0; s < m; ++s) {
    if (g[s].rows() != from.rank() || !contains(from.group(), g[s])) return false;
    inv.push_back(g[s].inverse());
  }
  for (std::size_t s = 0; s < m; ++s) {
    LaurentMatrix conj = LaurentMatrix::constant(inv[s], n) * from.rho(s).matrix() * LaurentMatrix::constant(g[s], n);
    if (!(conj == to.rho(s).matrix())) return false;
  }
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s)
      if (!(to.P(t, s) == inv[t] * from.P(t, s) * g[s])) return false;
  return true;
}

Gauge compose_gauges(const Gauge& first, const Gauge& second) {
  if (first.size() != second.size()) throw BundleError("gauge sizes differ");
  Gauge out;
  for (std::size_t s = 0; s < first.size(); ++s) out.push_back(first[s] * second[s]);
  return out;
}

Gauge invert_gauge(const Gauge& g) {
  Gauge out;
  for (const auto& x : g) out.push_back(x.inverse());
  return out;
}

Gauge identity_gauge(std::size_t num_cones, std::size_t rank) { return Gauge(num_cones, RatMatrix::identity(rank)); }

namespace {

void require_valid(const BundleData& d, const std::string& what) {
  auto report = validate(d);
  if (!report.valid()) throw BundleError(what + " requires valid data: " + report.violations.front().message);
}

Normalization normalize_unchecked(const BundleData& d, std::size_t base) {
  Gauge g;
  for (std::size_t s = 0; s < d.num_cones(); ++s) g.push_back(d.P(s, base));
  BundleData out = apply_gauge(d, g);
  if (!out.P_is_trivial()) throw std::logic_error("gauge normalization left a nontrivial transition");
  return {std::move(out), std::move(g), base};
}

std::size_t default_base(const BundleData& d) { return d.fan().least_max_cone(); }

}  // namespace

Normalization normalize_gauge(const BundleData& d, std::optional<std::size_t> base) {
  std::size_t b = base.value_or(default_base(d));
  if (b >= d.num_cones()) throw BundleError("base cone " + std::to_string(b) + " out of range");
  require_valid(d, "gauge normalization");
  Normalization n = normalize_unchecked(d, b);
  if (!validate(n.data).valid()) throw std::logic_error("normalized data failed validation");
  return n;
}

// ---------------------------------------------------------------------------
// Diagonalization and conjugacy

namespace {

std::optional<std::vector<Character>> diagonal_readout(const LaurentMatrix& m) {
  if (!m.is_diagonal()) return std::nullopt;
  std::vector<Character> w;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto mono = m(i, i).as_monomial();
    if (!mono || mono->second != 1) return std::nullopt;
    w.push_back(mono->first);
  }
  return w;
}

// Least gamma (greedy on ascending i) with a[i] == b[gamma[i]].
std::optional<std::vector<std::size_t>> match_equal(const std::vector<std::vector<Character>>& a,
                                                    const std::vector<std::vector<Character>>& b) {
  std::vector<std::size_t> gamma;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    std::size_t j = 0;
    while (j < b.size() && (used[j] || b[j] != x)) ++j;
    if (j == b.size()) return std::nullopt;
    used[j] = true;
    gamma.push_back(j);
  }
  return gamma;
}

struct ConjugacyAnswer {
  std::optional<RatMatrix> element;
  std::string reason;
};

bool conjugates_to(const RatMatrix& g, const std::vector<TorusHomomorphism>& a,
                   const std::vector<TorusHomomorphism>& b) {
  RatMatrix inv = g.inverse();
  for (std::size_t s = 0; s < a.size(); ++s) {
    std::size_t n = a[s].lattice_dim();
    LaurentMatrix c = LaurentMatrix::constant(inv, n) * a[s].matrix() * LaurentMatrix::constant(g, n);
    if (!(c == b[s].matrix())) return false;
  }
  return true;
}

// Solutions X in `space` of E^a_{s,chi} X = X E^b_{s,chi} for all s, chi.
std::vector<RatMatrix> intertwiners(const MatrixSpan& space, const std::vector<TorusHomomorphism>& a,
                                    const std::vector<TorusHomomorphism>& b) {
  const std::size_t r = space.matrix_size();
  const auto& basis = space.basis();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t s = 0; s < a.size(); ++s) {
    auto pa = a[s].isotypic_projectors();
    auto pb = b[s].isotypic_projectors();
    std::map<Character, std::pair<RatMatrix, RatMatrix>> by_weight;
    for (auto& [chi, e] : pa) by_weight[chi].first = e;
    for (auto& [chi, e] : pb) by_weight[chi].second = e;
    for (auto& [chi, ep] : by_weight) {
      RatMatrix ea = ep.first.rows() ? ep.first : RatMatrix(r, r);
      RatMatrix eb = ep.second.rows() ? ep.second : RatMatrix(r, r);
      std::vector<RatMatrix> images;
      for (const auto& x : basis) images.push_back(ea * x - x * eb);
      for (std::size_t k = 0; k < r * r; ++k) {
        std::vector<Rational> row;
        bool nonzero = false;
        for (const auto& im : images) {
          row.push_back(im.entries()[k]);
          nonzero = nonzero || row.back() != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  RatMatrix system(rows.size(), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) system(i, j) = rows[i][j];
  std::vector<RatMatrix> out;
  for (const auto& c : system.nullspace()) {
    RatMatrix x(r, r);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (c[j] != 0) x = x + c[j] * basis[j];
    out.push_back(std::move(x));
  }
  return out;
}

// An invertible member of span(solutions): the plain sum first, then seeded
// random combinations. The determinant is a polynomial of degree r on the
// span, so a random point misses its zero set with overwhelming probability.
std::optional<RatMatrix> invertible_member(const std::vector<RatMatrix>& solutions) {
  if (solutions.empty()) return std::nullopt;
  RatMatrix sum = solutions.front();
  for (std::size_t i = 1; i < solutions.size(); ++i) sum = sum + solutions[i];
  if (sum.invertible()) return sum;
  std::mt19937_64 rng(0x7a11a5eedULL);
  std::uniform_int_distribution<long> coeff(-(1L << 20), 1L << 20);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RatMatrix x(solutions.front().rows(), solutions.front().cols());
    for (const auto& s : solutions) x = x + Rational(coeff(rng)) * s;
    if (x.invertible()) return x;
  }
  return std::nullopt;
}

ConjugacyAnswer find_conjugating_element(const GroupDescriptor& group, const std::vector<TorusHomomorphism>& a,
                                         const std::vector<TorusHomomorphism>& b) {
  if (a.size() != b.size()) return {std::nullopt, "different numbers of cones"};
  const std::size_t r = group.rank();
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a[s].sorted_weights() != b[s].sorted_weights())
      return {std::nullopt, "weights of rho differ on cone " + std::to_string(s)};

  if (group.family().torus_is_central()) {
    // K0 central: conjugation fixes the normalized homomorphisms.
    for (std::size_t s = 0; s < a.size(); ++s)
      if (!(a[s].matrix() == b[s].matrix()))
        return {std::nullopt, "normalized homomorphisms differ on cone " + std::to_string(s)};
    return {RatMatrix::identity(r), ""};
  }

  auto da = simultaneously_diagonalize(a);
  auto db = simultaneously_diagonalize(b);
  if (da && db) {
    auto gamma = match_equal(db->joint_weights, da->joint_weights);
    if (!gamma) return {std::nullopt, "joint weight multisets differ"};
    RatMatrix q = RatMatrix::permutation(*gamma);
    RatMatrix g = da->basis * q * db->basis.inverse();
    if (contains(group, g) && conjugates_to(g, a, b)) return {g, ""};
  } else if (da.has_value() != db.has_value()) {
    return {std::nullopt, "one family is split and the other is not"};
  }

  auto sols = intertwiners(group.algebra(), a, b);
  if (sols.empty()) return {std::nullopt, "no nonzero intertwiner in " + group.str()};
  auto g = invertible_member(sols);
  if (!g) return {std::nullopt, "no invertible intertwiner in " + group.str()};
  if (!contains(group, *g) || !conjugates_to(*g, a, b))
    throw std::logic_error("intertwiner failed verification");
  return {*g, ""};
}

}  // namespace

std::optional<SimultaneousDiagonalization> simultaneously_diagonalize(const std::vector<TorusHomomorphism>& family) {
  if (family.empty()) return std::nullopt;
  const std::size_t r = family.front().rank();
  std::vector<std::vector<Character>> readouts;
  for (const auto& h : family) {
    auto w = diagonal_readout(h.matrix());
    if (!w) break;
    readouts.push_back(std::move(*w));
  }
  if (readouts.size() == family.size()) {
    SimultaneousDiagonalization out{RatMatrix::identity(r), std::vector<std::vector<Character>>(r)};
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& w : readouts) out.joint_weights[i].push_back(w[i]);
    return out;
  }

  std::vector<std::vector<std::pair<Character, RatMatrix>>> projectors;
  for (const auto& h : family) projectors.push_back(h.isotypic_projectors());
  for (std::size_t s = 0; s < projectors.size(); ++s)
    for (std::size_t t = s + 1; t < projectors.size(); ++t)
      for (const auto& [x, e] : projectors[s])
        for (const auto& [y, f] : projectors[t])
          if (!(e * f == f * e)) return std::nullopt;

  std::vector<std::pair<std::vector<Character>, RatMatrix>> parts{{{}, RatMatrix::identity(r)}};
  for (const auto& projs : projectors) {
    std::vector<std::pair<std::vector<Character>, RatMatrix>> next;
    for (const auto& [weights, q] : parts)
      for (const auto& [chi, e] : projs) {
        RatMatrix qe = q * e;
        if (qe.is_zero()) continue;
        auto w = weights;
        w.push_back(chi);
        next.emplace_back(std::move(w), std::move(qe));
      }
    parts = std::move(next);
  }
  SimultaneousDiagonalization out{RatMatrix(r, r), {}};
  std::size_t col = 0;
  for (const auto& [weights, q] : parts)
    for (auto p : q.pivot_columns()) {
      if (col == r) return std::nullopt;
      for (std::size_t i = 0; i < r; ++i) out.basis(i, col) = q(i, p);
      out.joint_weights.push_back(weights);
      ++col;
    }
  if (col != r || !out.basis.invertible()) return std::nullopt;
  return out;
}

std::optional<RatMatrix> conjugating_element(const GroupDescriptor& group, const std::vector<TorusHomomorphism>& a,
                                             const std::vector<TorusHomomorphism>& b) {
  return find_conjugating_element(group, a, b).element;
}

EquivalenceResult equivalent(const BundleData& a, const BundleData& b) {
  if (!(a.fan_handle() == b.fan_handle() || a.fan() == b.fan()))
    throw BundleError("equivalence needs data over the same fan");
  if (!(a.group() == b.group())) throw BundleError("equivalence needs data with the same structure group");
  require_valid(a, "equivalence");
  require_valid(b, "equivalence");
  std::size_t base = default_base(a);
  Normalization na = normalize_unchecked(a, base);
  Normalization nb = normalize_unchecked(b, base);
  auto answer = find_conjugating_element(a.group(), na.data.rho(), nb.data.rho());
  if (!answer.element) return {false, {}, answer.reason};
  Gauge witness;
  for (std::size_t s = 0; s < a.num_cones(); ++s)
    witness.push_back(na.gauge[s] * *answer.element * nb.gauge[s].inverse());
  if (!verify_gauge(a, b, witness)) throw std::logic_error("equivalence witness failed verification");
  return {true, std::move(witness), "witness verified"};
}

BundleData kaneyama_form(const BundleData& d) {
  const std::size_t m = d.num_cones();
  Gauge g = identity_gauge(m, d.rank());
  bool need_gauge = false;
  for (std::size_t s = 0; s < m; ++s)
    if (!diagonal_readout(d.rho(s).matrix())) {
      g[s] = d.rho(s).conjugator();
      need_gauge = true;
    }
  BundleData base = d;
  if (need_gauge) {
    for (std::size_t s = 0; s < m; ++s)
      if (!contains(d.group(), g[s]))
        throw BundleError("cone " + std::to_string(s) + ": diagonalizing conjugator is not in " + d.group().str());
    base = apply_gauge(d, g);
  }
  std::vector<TorusHomomorphism> rho;
  for (std::size_t s = 0; s < m; ++s) {
    auto w = diagonal_readout(base.rho(s).matrix());
    if (!w) throw std::logic_error("homomorphism not diagonal after gauge");
    rho.push_back(TorusHomomorphism::diagonal(std::move(*w)));
  }
  return BundleData(d.fan_handle(), d.group(), std::move(rho), base.transitions());
}

LiteralKaneyamaResult kaneyama_equivalence_literal(const BundleData& a, const BundleData& b) {
  if (!(a.fan_handle() == b.fan_handle() || a.fan() == b.fan()))
    throw BundleError("equivalence needs data over the same fan");
  if (!(a.group() == b.group())) throw BundleError("equivalence needs data with the same structure group");
  BundleData ka = kaneyama_form(a);
  BundleData kb = kaneyama_form(b);
  LiteralKaneyamaResult out;
  const std::size_t m = a.num_cones();
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::vector<Character>> wa, wb;
    for (const auto& w : ka.rho(s).weights()) wa.push_back({w});
    for (const auto& w : kb.rho(s).weights()) wb.push_back({w});
    auto gamma = match_equal(wa, wb);
    if (!gamma) {
      out.reason = "weight multisets differ on cone " + std::to_string(s);
      return out;
    }
    out.permutations.push_back(std::move(*gamma));
  }
  std::size_t base = default_base(a);
  for (std::size_t s = 0; s < m; ++s) out.gauge.push_back(ka.P(s, base) * kb.P(s, base).inverse());
  for (std::size_t s = 0; s < m; ++s)
    if (!contains(a.group(), out.gauge[s])) {
      out.reason = "transition gauge leaves " + a.group().str();
      return out;
    }
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s)
      if (!(kb.P(t, s) == out.gauge[t].inverse() * ka.P(t, s) * out.gauge[s])) {
        out.reason = "transition values are not gauge related at " + pair_str(t, s);
        return out;
      }
  out.holds = true;
  return out;
}

BundleData canonical_form(const BundleData& d) {
  BundleData data = normalize_gauge(d).data;
  auto diag = simultaneously_diagonalize(data.rho());
  if (!diag) return data;
  const std::size_t r = d.rank();
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return diag->joint_weights[i] < diag->joint_weights[j];
  });
  RatMatrix g = diag->basis * RatMatrix::permutation(order);
  if (!contains(d.group(), g)) {
    g = diag->basis;
    if (!contains(d.group(), g)) return data;
  }
  if (!g.is_identity()) data = apply_gauge(data, Gauge(d.num_cones(), g));
  return kaneyama_form(data);
}

// ---------------------------------------------------------------------------
// Permutation matching

namespace {

bool augment(std::size_t i, const std::vector<std::vector<bool>>& allowed, std::vector<bool>& seen,
             std::vector<std::size_t>& match_right, const std::vector<bool>& left_fixed,
             const std::vector<bool>& right_fixed) {
  const std::size_t r = allowed.size();
  for (std::size_t j = 0; j < r; ++j) {
    if (!allowed[i][j] || seen[j] || right_fixed[j]) continue;
    seen[j] = true;
    if (match_right[j] == r || augment(match_right[j], allowed, seen, match_right, left_fixed, right_fixed)) {
      match_right[j] = i;
      return true;
    }
  }
  return false;
}

// Perfect matching on the rows/columns not yet fixed?
bool completable(const std::vector<std::vector<bool>>& allowed, const std::vector<bool>& left_fixed,
                 const std::vector<bool>& right_fixed) {
  const std::size_t r = allowed.size();
  std::vector<std::size_t> match_right(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (left_fixed[i]) continue;
    std::vector<bool> seen(r, false);
    if (!augment(i, allowed, seen, match_right, left_fixed, right_fixed)) return false;
  }
  return true;
}

}  // namespace

PermutationMatch permutation_match(const BundleData& d, std::size_t sigma, std::size_t tau) {
  if (sigma >= d.num_cones() || tau >= d.num_cones()) throw BundleError("cone index out of range");
  const auto& ws = d.rho(sigma).weights();
  const auto& wt = d.rho(tau).weights();
  const std::size_t r = ws.size();
  const Cone& face = d.fan_handle()->common_face(sigma, tau);
  std::vector<std::vector<bool>> allowed(r, std::vector<bool>(r, true));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (auto ray : face.rays())
        if (pairing(ws[i] - wt[j], d.fan().ray(ray)) != 0) {
          allowed[i][j] = false;
          break;
        }

  std::vector<bool> left_fixed(r, false), right_fixed(r, false);
  if (!completable(allowed, left_fixed, right_fixed))
    return {std::nullopt, "no permutation matches the weights of cones " + std::to_string(sigma) + " and " +
                              std::to_string(tau) + " along face " + face.str()};
  std::vector<std::size_t> gamma(r);
  for (std::size_t i = 0; i < r; ++i) {
    left_fixed[i] = true;
    for (std::size_t j = 0; j < r; ++j) {
      if (!allowed[i][j] || right_fixed[j]) continue;
      right_fixed[j] = true;
      if (completable(allowed, left_fixed, right_fixed)) {
        gamma[i] = j;
        break;
      }
      right_fixed[j] = false;
    }
  }
  return {gamma, ""};
}

// ---------------------------------------------------------------------------
// Transition functions

TransitionReport transition_matrices(const BundleData& d) {
  TransitionReport rep;
  const std::size_t m = d.num_cones();
  const std::size_t n = d.fan().dim();
  rep.num_cones = m;
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) rep.phi.push_back(transition_function(d, t, s));

  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t u = 0; u < m; ++u)
        if (!(rep.at(t, s) * rep.at(s, u) == rep.at(t, u))) {
          rep.cocycle = false;
          rep.failures.push_back("cocycle fails for " + pair_str(t, s) + "," + pair_str(s, u));
        }

  const IntMatrix diag = diagonal_embedding(n), first = first_factor(n), second = second_factor(n);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t s = 0; s < m; ++s) {
      const LaurentMatrix& phi = rep.at(t, s);
      LaurentMatrix lhs = phi.map_exponents(diag);
      LaurentMatrix rhs = d.rho(t).matrix().map_exponents(first) * phi.map_exponents(second) *
                          d.rho(s).inverse_matrix().map_exponents(first);
      if (!(lhs == rhs)) {
        rep.equivariance = false;
        rep.failures.push_back("equivariance fails for " + pair_str(t, s));
      }
      if (!phi.determinant().as_monomial()) {
        rep.unit_determinants = false;
        rep.failures.push_back("determinant of transition" + pair_str(t, s) + " is not a monomial");
      }
    }
  return rep;
}

RatMatrix evaluate_transition(const BundleData& d, std::size_t tau, std::size_t sigma,
                              std::span<const Rational> point) {
  if (tau >= d.num_cones() || sigma >= d.num_cones()) throw BundleError("cone index out of range");
  if (point.size() != d.fan().dim())
    throw BundleError("point needs " + std::to_string(d.fan().dim()) + " coordinates");
  for (std::size_t i = 0; i < point.size(); ++i)
    if (point[i] == 0) throw BundleError("coordinate " + std::to_string(i) + " is zero: point is outside the dense orbit");
  return transition_function(d, tau, sigma).evaluate(point);
}

// ---------------------------------------------------------------------------
// Line bundles and split data

namespace {

std::vector<Character> solve_ray_values(const FanHandle& fan, std::span<const Integer> ray_values) {
  const Fan& f = fan->fan();
  if (!all_max_cones_full_dim(f)) throw BundleError("every maximal cone must be full-dimensional");
  if (ray_values.size() != f.num_rays())
    throw BundleError("expected " + std::to_string(f.num_rays()) + " ray values, got " +
                      std::to_string(ray_values.size()));
  std::vector<Character> xi;
  for (std::size_t s = 0; s < f.num_max_cones(); ++s) {
    const Cone& cone = f.max_cone(s);
    // <xi, v_j> = a_j for the cone's generators v_j: xi = (B^T)^{-1} a.
    IntMatrix inv_t = unimodular_inverse(f.ray_matrix(cone).transpose());
    Character chi(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i)
      for (std::size_t j = 0; j < cone.dim(); ++j) chi[i] += inv_t(i, j) * ray_values[cone.rays()[j]];
    xi.push_back(std::move(chi));
  }
  return xi;
}

}  // namespace

BundleData line_bundle_from_ray_values(const FanHandle& fan, std::span<const Integer> ray_values) {
  auto xi = solve_ray_values(fan, ray_values);
  std::vector<std::vector<Character>> weights;
  for (auto& chi : xi) weights.push_back({std::move(chi)});
  return BundleData::diagonal(fan, GroupDescriptor::diagonal_torus(1), std::move(weights));
}

std::vector<Integer> line_bundle_to_ray_values(const BundleData& d) {
  if (d.rank() != 1) throw BundleError("ray values are defined for rank-one data");
  const Fan& f = d.fan();
  std::vector<std::optional<Integer>> values(f.num_rays());
  for (std::size_t s = 0; s < d.num_cones(); ++s) {
    const Character& chi = d.rho(s).weights().front();
    for (auto ray : f.max_cone(s).rays()) {
      Integer v = pairing(chi, f.ray(ray));
      if (values[ray] && *values[ray] != v)
        throw BundleError("cones disagree on the value at ray " + std::to_string(ray));
      values[ray] = v;
    }
  }
  std::vector<Integer> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) throw BundleError("ray " + std::to_string(i) + " lies in no maximal cone");
    out.push_back(*values[i]);
  }
  return out;
}

BundleData split_bundle(const FanHandle& fan, const GroupDescriptor& group,
                        const std::vector<std::vector<Integer>>& factor_ray_values) {
  TorusPattern torus = maximal_torus(group);
  if (factor_ray_values.size() != torus.rank)
    throw BundleError("maximal torus of " + group.str() + " has rank " + std::to_string(torus.rank) + ", got " +
                      std::to_string(factor_ray_values.size()) + " factors");
  std::vector<std::vector<Character>> factor_xi;
  for (const auto& a : factor_ray_values) factor_xi.push_back(solve_ray_values(fan, a));
  std::vector<std::vector<Character>> xi(fan->num_cones());
  for (std::size_t s = 0; s < fan->num_cones(); ++s)
    for (auto c : torus.class_of_line) xi[s].push_back(factor_xi[c][s]);
  return BundleData::diagonal(fan, group, std::move(xi));
}

// ---------------------------------------------------------------------------
// Reductions and automorphisms

TorusReduction reduce_structure_group(const BundleData& d) {
  if (!is_torus_normal(d.group()))
    throw BundleError("the maximal torus of " + d.group().str() +
                      " is not normal; reduction to the diagonal torus is not available");
  Normalization n = normalize_gauge(d);
  TorusPattern torus = maximal_torus(d.group());
  std::vector<std::vector<Character>> xi;
  for (std::size_t s = 0; s < d.num_cones(); ++s) {
    auto w = diagonal_readout(n.data.rho(s).matrix());
    if (!w) throw BundleError("homomorphism on cone " + std::to_string(s) + " is not valued in the maximal torus");
    std::vector<std::optional<Character>> per_class(torus.rank);
    for (std::size_t i = 0; i < w->size(); ++i) {
      auto& slot = per_class[torus.class_of_line[i]];
      if (slot && *slot != (*w)[i])
        throw BundleError("homomorphism on cone " + std::to_string(s) + " is not valued in the maximal torus");
      slot = (*w)[i];
    }
    std::vector<Character> row;
    for (auto& c : per_class) row.push_back(*c);
    xi.push_back(std::move(row));
  }
  BundleData reduced = BundleData::diagonal(d.fan_handle(), GroupDescriptor::diagonal_torus(torus.rank), std::move(xi));
  if (!validate(reduced).valid()) throw std::logic_error("reduced data failed validation");
  return {std::move(reduced), std::move(n.data), torus.class_of_line};
}

SubgroupDescription automorphism_subgroup(const BundleData& d) {
  BundleData n = normalize_gauge(d).data;
  const std::size_t r = d.rank();
  const MatrixSpan& algebra = d.group().algebra();
  std::optional<SubgroupDescription> out;
  if (auto diag = simultaneously_diagonalize(n.rho())) {
    const RatMatrix& h = diag->basis;
    if (h.is_identity()) {
      out = centralizer_of_weights(d.group(), diag->joint_weights);
    } else {
      // Commutant of diagonal data, intersected with h^{-1} G h.
      RatMatrix h_inv = h.inverse();
      std::vector<RatMatrix> conj;
      for (const auto& b : algebra.basis()) conj.push_back(h_inv * b * h);
      auto blocks = centralizer_of_weights(GroupDescriptor::general_linear(r), diag->joint_weights);
      out.emplace(blocks.blocks(), blocks.span().intersect(MatrixSpan(r, std::move(conj))), h);
    }
  } else {
    out.emplace(std::vector<std::vector<std::size_t>>{}, MatrixSpan(r, intertwiners(algebra, n.rho(), n.rho())),
                RatMatrix::identity(r));
  }
  if (!out->contains_scalars()) throw std::logic_error("automorphism subgroup misses the scalar matrices");
  return *out;
}

}  // namespace toric
