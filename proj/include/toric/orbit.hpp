#pragma once

// Splitting data T = T_sigma x O_sigma attached to a cone: a unimodular basis
// whose leading columns are the cone's generators. Characters of the
// stabilizer torus T_sigma pull back to the span of the leading rows of the
// inverse basis; a character factors through T -> T_sigma exactly when it
// vanishes on the completion columns.

#include <vector>

#include "toric/fan.hpp"

namespace toric {

class ConeSplitting {
 public:
  ConeSplitting(Cone cone, IntMatrix basis);

  const Cone& cone() const { return cone_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t cone_dim() const { return cone_.dim(); }
  std::size_t lattice_dim() const { return basis_.rows(); }

  /// Generators of the image of M_sigma in M (rows of the inverse basis).
  const std::vector<Character>& stab_char_image() const { return stab_chars_; }
  /// Basis columns beyond the cone's generators; they span the cocharacters
  /// of the orbit O_sigma.
  std::vector<LatticeVector> completion() const;

 private:
  Cone cone_;
  IntMatrix basis_;
  std::vector<Character> stab_chars_;
};

ConeSplitting splitting_for(const Fan& fan, const Cone& cone);

/// True iff chi lies in the image of M_sigma.
bool character_factors(const ConeSplitting& sp, const Character& chi);

}  // namespace toric
