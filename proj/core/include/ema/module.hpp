#ifndef EMA_MODULE_HPP
#define EMA_MODULE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "ema/lie.hpp"
#include "ema/linalg.hpp"

namespace ema {

/// Finite-dimensional module: one exact action matrix per algebra basis element.
class FiniteModule {
 public:
  FiniteModule() = default;
  FiniteModule(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim, std::vector<Matrix> action);

  // Zero action on k^dim.
  static FiniteModule trivial(std::shared_ptr<const LieAlgebra> algebra, std::size_t dim = 1);

  const LieAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return alg_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_.at(i); }
  const std::vector<Matrix>& actions() const { return action_; }
  // rho(x) for x given in algebra coordinates.
  Matrix act(const Vec& x) const;

  // Throws CheckFailure naming the first basis pair where
  // rho([u,v]) != [rho(u), rho(v)].
  void verify() const;
  bool is_module() const;

  std::optional<Vec> cyclic_vector;

 private:
  std::shared_ptr<const LieAlgebra> alg_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

// Shared-algebra guard used by every binary construction.
void require_same_algebra(const FiniteModule& a, const FiniteModule& b);

FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b);
// Diagonal action u -> u (x) 1 + 1 (x) u.
FiniteModule tensor(const FiniteModule& a, const FiniteModule& b);
// Hom(M, N) = M* (x) N with (u.T) = rho_N(u) T - T rho_M(u); basis E_{ij}
// (row i of N, column j of M) in row-major order.
FiniteModule hom_module(const FiniteModule& m, const FiniteModule& n);
// Restriction to an invariant subspace, in the subspace basis.
FiniteModule submodule(const FiniteModule& m, const Subspace& s);
// Quotient by an invariant subspace; the basis is the non-pivot coordinates.
FiniteModule quotient(const FiniteModule& m, const Subspace& s);
// rho'(u) = rho(P u) for an algebra map P (columns: images of target basis
// elements in source coordinates).
FiniteModule pull_back(const FiniteModule& m, std::shared_ptr<const LieAlgebra> target, const Matrix& p);

bool is_invariant(const FiniteModule& m, const Subspace& s);
// Smallest submodule containing the seed.
Subspace generated_submodule(const FiniteModule& m, const Subspace& seed);
bool is_irreducible(const FiniteModule& m);

}  // namespace ema

#endif  // EMA_MODULE_HPP
