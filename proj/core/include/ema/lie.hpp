#ifndef EMA_LIE_HPP
#define EMA_LIE_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "ema/linalg.hpp"

namespace ema {

struct Term {
  std::size_t index;
  Cyclo coeff;
};
using Sparse = std::vector<Term>;

Vec to_dense(const Sparse& s, std::size_t n);
Sparse to_sparse(const Vec& v);

/// Finite-dimensional Lie algebra given by structure constants on a basis.
///
/// Two algebras are the same object for module purposes when their keys
/// agree; the key is a canonical description of how the algebra was built.
class LieAlgebra {
 public:
  virtual ~LieAlgebra() = default;

  std::size_t dim() const { return labels_.size(); }
  const std::string& key() const { return key_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  // [b_i, b_j]
  const Sparse& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  // Matrix of ad(x) in the basis.
  Matrix ad(const Vec& x) const;

  // Antisymmetry and Jacobi on every basis triple (or the first `limit`
  // basis elements when limit > 0).
  bool check_jacobi(std::size_t limit = 0) const;

  bool same_as(const LieAlgebra& o) const { return this == &o || (dim() == o.dim() && key_ == o.key_); }

 protected:
  LieAlgebra() = default;
  void set_structure(std::string key, std::vector<std::string> labels, std::vector<Sparse> table);

 private:
  std::string key_;
  std::vector<std::string> labels_;
  std::vector<Sparse> table_;
};

/// Lie algebra given directly by a bracket table; antisymmetry and Jacobi are checked.
class TableAlgebra : public LieAlgebra {
 public:
  TableAlgebra(std::string key, std::vector<std::string> labels, std::vector<Sparse> table);
  static std::shared_ptr<const TableAlgebra> abelian(std::size_t n);
};

}  // namespace ema

#endif  // EMA_LIE_HPP
