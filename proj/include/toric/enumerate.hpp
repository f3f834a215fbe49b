#pragma once

// Bounded enumeration of split bundle classes: every ray-value tuple in the
// box [-B, B] for each factor of the maximal torus, lifted to Kaneyama data
// and deduplicated up to equivalence.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "toric/bundle.hpp"

namespace toric {

class EnumerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnumerationSpec {
  FanHandle fan;
  GroupDescriptor group;
  unsigned bound = 0;
  bool force_pairwise = false;  // compare with equivalent() instead of canonical keys
  std::size_t cap = 1'000'000;  // largest box accepted
};

struct EnumerationResult {
  std::vector<BundleData> classes;  // canonical representatives, first-occurrence order
  std::size_t candidates = 0;
};

/// Number of candidates (2B+1)^{d k}; throws EnumerationError past `cap`.
std::size_t box_size(const EnumerationSpec& spec);

EnumerationResult enumerate_classes(const EnumerationSpec& spec);

struct DedupClass {
  std::vector<std::size_t> members;  // members[0] is the representative
  std::vector<Gauge> witnesses;      // witnesses[i]: members[0] -> members[i]
};

struct DedupReport {
  std::vector<DedupClass> classes;
};

/// Partition into equivalence classes; every member carries a verified gauge
/// from its class representative.
DedupReport dedup_report(const std::vector<BundleData>& data);

}  // namespace toric
