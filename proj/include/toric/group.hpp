#pragma once

// Structure groups G <= GL(r, Q). Every supported family is the unit group
// of a unital matrix algebra, so membership is "lies in a linear span and is
// invertible". New families implement GroupFamily.

#include <memory>
#include <string>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/rational_matrix.hpp"

namespace toric {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// K0 = (C^*)^r ∩ G as a diagonal pattern: entry i of a torus element is
/// the free parameter number class_of_line[i].
struct TorusPattern {
  std::size_t rank = 0;
  std::vector<std::size_t> class_of_line;

  bool contains(const RatMatrix& m) const;
  RatMatrix element(const std::vector<Rational>& params) const;
};

class GroupFamily {
 public:
  virtual ~GroupFamily() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t matrix_size() const = 0;
  virtual std::vector<std::size_t> partition() const { return {}; }
  virtual std::string str() const = 0;
  /// Linear span whose invertible elements are exactly G.
  virtual MatrixSpan algebra() const = 0;
  virtual TorusPattern maximal_torus() const = 0;
  virtual bool torus_is_normal() const = 0;
  /// K0 lies in the center of G, so conjugation fixes K0-valued data.
  virtual bool torus_is_central() const = 0;
};

class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  explicit GroupDescriptor(std::shared_ptr<const GroupFamily> family);

  static GroupDescriptor general_linear(std::size_t r);
  static GroupDescriptor diagonal_torus(std::size_t r);
  static GroupDescriptor block_nilpotent(std::vector<std::size_t> partition);

  const GroupFamily& family() const { return *family_; }
  std::string kind() const { return family_->kind(); }
  std::size_t rank() const { return family_->matrix_size(); }
  std::vector<std::size_t> partition() const { return family_->partition(); }
  std::string str() const { return family_->str(); }
  const MatrixSpan& algebra() const { return algebra_; }

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b);

 private:
  std::shared_ptr<const GroupFamily> family_;
  MatrixSpan algebra_;
};

/// Shape and invertibility test. Throws GroupError on a size mismatch.
bool contains(const GroupDescriptor& g, const RatMatrix& a);
TorusPattern maximal_torus(const GroupDescriptor& g);
bool is_torus_normal(const GroupDescriptor& g);

/// { c A c^{-1} : A in span, A invertible } for a linear span of matrices.
class SubgroupDescription {
 public:
  SubgroupDescription(std::vector<std::vector<std::size_t>> blocks, MatrixSpan span, RatMatrix conjugator);

  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const MatrixSpan& span() const { return span_; }
  const RatMatrix& conjugator() const { return conjugator_; }
  std::size_t dimension() const { return span_.dimension(); }

  bool contains(const RatMatrix& m) const;
  /// Every nonzero scalar matrix lies in the subgroup.
  bool contains_scalars() const;
  std::string str() const;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  MatrixSpan span_;
  RatMatrix conjugator_;
  RatMatrix conjugator_inv_;
};

/// Centralizer in G of the diagonal family diag(chi^{w_1}, ..., chi^{w_r}),
/// where weights[i] is the joint weight of line i across all maximal cones.
/// Lines with equal joint weights are grouped into blocks.
SubgroupDescription centralizer_of_weights(const GroupDescriptor& g,
                                           const std::vector<std::vector<Character>>& weights);

}  // namespace toric
