#include "toric/group.hpp"

#include <numeric>

namespace toric {

namespace {

RatMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

class GeneralLinear final : public GroupFamily {
 public:
  explicit GeneralLinear(std::size_t r) : r_(r) {}
  std::string kind() const override { return "GL"; }
  std::size_t matrix_size() const override { return r_; }
  std::string str() const override { return "GL(" + std::to_string(r_) + ")"; }
  MatrixSpan algebra() const override {
    std::vector<RatMatrix> gens;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) gens.push_back(unit_matrix(r_, i, j));
    return MatrixSpan(r_, std::move(gens));
  }
  TorusPattern maximal_torus() const override {
    TorusPattern t{r_, std::vector<std::size_t>(r_)};
    std::iota(t.class_of_line.begin(), t.class_of_line.end(), std::size_t{0});
    return t;
  }
  bool torus_is_normal() const override { return r_ == 1; }
  bool torus_is_central() const override { return r_ == 1; }

 private:
  std::size_t r_;
};

class DiagonalTorus final : public GroupFamily {
 public:
  explicit DiagonalTorus(std::size_t r) : r_(r) {}
  std::string kind() const override { return "torus"; }
  std::size_t matrix_size() const override { return r_; }
  std::string str() const override { return "torus(" + std::to_string(r_) + ")"; }
  MatrixSpan algebra() const override {
    std::vector<RatMatrix> gens;
    for (std::size_t i = 0; i < r_; ++i) gens.push_back(unit_matrix(r_, i, i));
    return MatrixSpan(r_, std::move(gens));
  }
  TorusPattern maximal_torus() const override {
    TorusPattern t{r_, std::vector<std::size_t>(r_)};
    std::iota(t.class_of_line.begin(), t.class_of_line.end(), std::size_t{0});
    return t;
  }
  bool torus_is_normal() const override { return true; }
  bool torus_is_central() const override { return true; }

 private:
  std::size_t r_;
};

// Block diagonal; each block upper triangular with a constant diagonal.
class BlockNilpotent final : public GroupFamily {
 public:
  explicit BlockNilpotent(std::vector<std::size_t> partition) : partition_(std::move(partition)) {
    r_ = std::accumulate(partition_.begin(), partition_.end(), std::size_t{0});
  }
  std::string kind() const override { return "block_nilpotent"; }
  std::size_t matrix_size() const override { return r_; }
  std::vector<std::size_t> partition() const override { return partition_; }
  std::string str() const override {
    std::string s = "block_nilpotent(";
    for (std::size_t i = 0; i < partition_.size(); ++i) s += (i ? "," : "") + std::to_string(partition_[i]);
    return s + ")";
  }
  MatrixSpan algebra() const override {
    std::vector<RatMatrix> gens;
    std::size_t offset = 0;
    for (auto size : partition_) {
      RatMatrix diag(r_, r_);
      for (std::size_t i = 0; i < size; ++i) diag(offset + i, offset + i) = 1;
      gens.push_back(std::move(diag));
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) gens.push_back(unit_matrix(r_, offset + i, offset + j));
      offset += size;
    }
    return MatrixSpan(r_, std::move(gens));
  }
  TorusPattern maximal_torus() const override {
    TorusPattern t{partition_.size(), {}};
    for (std::size_t b = 0; b < partition_.size(); ++b)
      for (std::size_t i = 0; i < partition_[b]; ++i) t.class_of_line.push_back(b);
    return t;
  }
  bool torus_is_normal() const override { return true; }
  bool torus_is_central() const override { return true; }

 private:
  std::vector<std::size_t> partition_;
  std::size_t r_ = 0;
};

}  // namespace

bool TorusPattern::contains(const RatMatrix& m) const {
  if (m.rows() != class_of_line.size() || !m.square() || !m.is_diagonal()) return false;
  std::vector<std::optional<Rational>> value(rank);
  for (std::size_t i = 0; i < class_of_line.size(); ++i) {
    if (m(i, i) == 0) return false;
    auto& v = value[class_of_line[i]];
    if (!v) v = m(i, i);
    else if (*v != m(i, i)) return false;
  }
  return true;
}

RatMatrix TorusPattern::element(const std::vector<Rational>& params) const {
  if (params.size() != rank) throw GroupError("torus element needs " + std::to_string(rank) + " parameters");
  std::vector<Rational> diag;
  for (auto c : class_of_line) diag.push_back(params[c]);
  return RatMatrix::diagonal(diag);
}

GroupDescriptor::GroupDescriptor(std::shared_ptr<const GroupFamily> family) : family_(std::move(family)) {
  if (!family_) throw GroupError("null group family");
  if (family_->matrix_size() == 0) throw GroupError("group rank must be at least 1");
  algebra_ = family_->algebra();
  if (!algebra_.contains(RatMatrix::identity(family_->matrix_size())))
    throw GroupError(family_->str() + ": algebra does not contain the identity");
}

GroupDescriptor GroupDescriptor::general_linear(std::size_t r) {
  if (r == 0) throw GroupError("GL(r) needs r >= 1");
  return GroupDescriptor(std::make_shared<GeneralLinear>(r));
}

GroupDescriptor GroupDescriptor::diagonal_torus(std::size_t r) {
  if (r == 0) throw GroupError("torus(r) needs r >= 1");
  return GroupDescriptor(std::make_shared<DiagonalTorus>(r));
}

GroupDescriptor GroupDescriptor::block_nilpotent(std::vector<std::size_t> partition) {
  if (partition.empty()) throw GroupError("block_nilpotent needs a nonempty partition");
  for (auto p : partition)
    if (p == 0) throw GroupError("partition entries must be at least 1");
  return GroupDescriptor(std::make_shared<BlockNilpotent>(std::move(partition)));
}

bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
  if (!a.family_ || !b.family_) return a.family_ == b.family_;
  return a.kind() == b.kind() && a.rank() == b.rank() && a.partition() == b.partition();
}

bool contains(const GroupDescriptor& g, const RatMatrix& a) {
  if (a.rows() != g.rank() || a.cols() != g.rank())
    throw GroupError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", group " +
                     g.str() + " acts on rank " + std::to_string(g.rank()));
  return g.algebra().contains(a) && a.invertible();
}

TorusPattern maximal_torus(const GroupDescriptor& g) { return g.family().maximal_torus(); }

bool is_torus_normal(const GroupDescriptor& g) { return g.family().torus_is_normal(); }

SubgroupDescription::SubgroupDescription(std::vector<std::vector<std::size_t>> blocks, MatrixSpan span,
                                         RatMatrix conjugator)
    : blocks_(std::move(blocks)), span_(std::move(span)), conjugator_(std::move(conjugator)) {
  conjugator_inv_ = conjugator_.inverse();
}

bool SubgroupDescription::contains(const RatMatrix& m) const {
  if (m.rows() != span_.matrix_size() || !m.square()) return false;
  return m.invertible() && span_.contains(conjugator_inv_ * m * conjugator_);
}

bool SubgroupDescription::contains_scalars() const {
  // c^{-1} (lambda I) c = lambda I, so this reduces to I in the span.
  return span_.contains(RatMatrix::identity(span_.matrix_size()));
}

std::string SubgroupDescription::str() const {
  std::string s;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) s += " x ";
    s += "block{";
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[b][i]);
    s += "}";
  }
  return s + " (dim " + std::to_string(dimension()) + ")";
}

SubgroupDescription centralizer_of_weights(const GroupDescriptor& g,
                                           const std::vector<std::vector<Character>>& weights) {
  const std::size_t r = g.rank();
  if (weights.size() != r)
    throw GroupError("expected " + std::to_string(r) + " joint weights, got " + std::to_string(weights.size()));
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> block_of(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t b = 0;
    while (b < blocks.size() && weights[blocks[b].front()] != weights[i]) ++b;
    if (b == blocks.size()) blocks.emplace_back();
    blocks[b].push_back(i);
    block_of[i] = b;
  }
  std::vector<RatMatrix> gens;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (block_of[i] == block_of[j]) gens.push_back(unit_matrix(r, i, j));
  MatrixSpan pattern(r, std::move(gens));
  return SubgroupDescription(std::move(blocks), pattern.intersect(g.algebra()), RatMatrix::identity(r));
}

}  // namespace toric
