#include "toric/orbit.hpp"

namespace toric {

ConeSplitting::ConeSplitting(Cone cone, IntMatrix basis) : cone_(std::move(cone)), basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols() || abs(basis_.determinant()) != 1)
    throw LatticeError("splitting basis must be unimodular");
  IntMatrix inv = unimodular_inverse(basis_);
  for (std::size_t i = 0; i < cone_.dim(); ++i) stab_chars_.push_back(inv.row(i));
}

std::vector<LatticeVector> ConeSplitting::completion() const {
  std::vector<LatticeVector> out;
  for (std::size_t j = cone_.dim(); j < basis_.cols(); ++j) out.push_back(basis_.column(j));
  return out;
}

ConeSplitting splitting_for(const Fan& fan, const Cone& cone) {
  if (!fan.in_face_closure(cone)) throw FanError("cone " + cone.str() + " is not in the fan");
  auto gens = fan.generators(cone);
  return ConeSplitting(cone, extend_to_basis(fan.dim(), gens));
}

bool character_factors(const ConeSplitting& sp, const Character& chi) {
  if (chi.dim() != sp.lattice_dim()) throw LatticeError("character has the wrong rank");
  for (std::size_t j = sp.cone_dim(); j < sp.basis().cols(); ++j)
    if (pairing(chi, sp.basis().column(j)) != 0) return false;
  return true;
}

}  // namespace toric
