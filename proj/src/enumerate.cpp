#include "toric/enumerate.hpp"

#include <set>

namespace toric {

namespace {

using Key = std::vector<std::vector<Character>>;

Key canonical_key(const BundleData& canonical) {
  Key key;
  for (const auto& h : canonical.rho()) key.push_back(h.weights());
  return key;
}

}  // namespace

std::size_t box_size(const EnumerationSpec& spec) {
  if (!spec.fan) throw EnumerationError("enumeration needs a fan");
  const Fan& fan = spec.fan->fan();
  if (!all_max_cones_full_dim(fan)) throw EnumerationError("every maximal cone must be full-dimensional");
  const std::size_t slots = fan.num_rays() * maximal_torus(spec.group).rank;
  const std::size_t side = 2 * std::size_t{spec.bound} + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (total > spec.cap / side)
      throw EnumerationError("box of " + std::to_string(side) + "^" + std::to_string(slots) +
                             " candidates exceeds the cap of " + std::to_string(spec.cap));
    total *= side;
  }
  return total;
}

EnumerationResult enumerate_classes(const EnumerationSpec& spec) {
  EnumerationResult out;
  out.candidates = box_size(spec);
  const std::size_t d = spec.fan->fan().num_rays();
  const std::size_t k = maximal_torus(spec.group).rank;
  const long b = spec.bound;

  std::vector<long> digits(d * k, -b);
  std::set<Key> seen;
  std::vector<BundleData> reps;  // pairwise mode compares against these
  for (std::size_t n = 0; n < out.candidates; ++n) {
    std::vector<std::vector<Integer>> values(k);
    for (std::size_t f = 0; f < k; ++f)
      for (std::size_t r = 0; r < d; ++r) values[f].emplace_back(digits[f * d + r]);
    BundleData candidate = split_bundle(spec.fan, spec.group, values);

    if (spec.force_pairwise) {
      bool fresh = true;
      for (const auto& rep : reps)
        if (equivalent(rep, candidate).equivalent) {
          fresh = false;
          break;
        }
      if (fresh) {
        reps.push_back(candidate);
        out.classes.push_back(canonical_form(candidate));
      }
    } else {
      BundleData canonical = canonical_form(candidate);
      if (seen.insert(canonical_key(canonical)).second) out.classes.push_back(std::move(canonical));
    }

    // odometer, last slot fastest
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < b) {
        ++digits[i];
        break;
      }
      digits[i] = -b;
    }
  }
  return out;
}

DedupReport dedup_report(const std::vector<BundleData>& data) {
  DedupReport report;
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (!(data[i].fan() == data[0].fan())) throw EnumerationError("item " + std::to_string(i) + " has a different fan");
    if (!(data[i].group() == data[0].group()))
      throw EnumerationError("item " + std::to_string(i) + " has a different structure group");
  }
  // Equivalence is transitive, so testing against representatives suffices.
  for (std::size_t i = 0; i < data.size(); ++i) {
    bool placed = false;
    for (auto& cls : report.classes) {
      auto eq = equivalent(data[cls.members.front()], data[i]);
      if (eq.equivalent) {
        cls.members.push_back(i);
        cls.witnesses.push_back(std::move(eq.witness));
        placed = true;
        break;
      }
    }
    if (!placed)
      report.classes.push_back({{i}, {identity_gauge(data[i].num_cones(), data[i].rank())}});
  }
  return report;
}

}  // namespace toric
