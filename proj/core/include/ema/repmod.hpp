#ifndef EMA_REPMOD_HPP
#define EMA_REPMOD_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ema/ema.hpp"
#include "ema/module.hpp"
#include "ema/rootdata.hpp"

namespace ema {

/// Finitely supported map from points to dominant weights; zero values are dropped.
class PsiFunction {
 public:
  PsiFunction() = default;
  void set(const Point& x, const Weight& w);
  // Zero weight of the given rank when x is outside the support.
  Weight at(const Point& x, int rank) const;
  const std::vector<std::pair<Point, Weight>>& entries() const { return entries_; }
  std::vector<Point> support() const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  // sum of all values
  Weight total(int rank) const;
  // "{1: (2), -1: (2)}"; "0" for the zero function.
  std::string str() const;

  // Set by whoever declares the function; checked by is_equivariant.
  bool equivariant = false;

  friend bool operator==(const PsiFunction& a, const PsiFunction& b) { return a.entries_ == b.entries_; }
  friend auto operator<=>(const PsiFunction& a, const PsiFunction& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<std::pair<Point, Weight>> entries_;
};

bool is_equivariant(const GammaGroup& grp, const PsiFunction& psi);
// psi^Gamma(gamma x) = gamma_Out . psi(x); requires Supp psi in X_*.
PsiFunction psi_gamma(const GammaGroup& grp, const PsiFunction& psi);
// psi restricted to a transversal meeting every support orbit exactly once.
PsiFunction psi_restrict(const GammaGroup& grp, const PsiFunction& psi, const std::vector<Point>& transversal);
// Smallest point of every support orbit, sorted.
std::vector<Point> canonical_transversal(const GammaGroup& grp, const PsiFunction& psi);
// Sum of the heights of all values.
Rational height_psi(const RootDatum& rd, const PsiFunction& psi);
// Orbit-wise height of an equivariant function: one value per orbit.
Rational height_psi(const GammaGroup& grp, const PsiFunction& psi);
// Exponent e at every support point.
EtaFunction eta_on_support(const PsiFunction& psi, int e);

FiniteModule evaluation_module(const PsiFunction& psi, const std::shared_ptr<const TruncatedAlgebra>& target);
FiniteModule evaluation_module(const PsiFunction& psi, const std::shared_ptr<const InvariantAlgebra>& target);

// T: compose with ev at the support of the module's truncation (completed by
// the representatives of the remaining orbits of the target).
FiniteModule twist(const FiniteModule& m, const std::shared_ptr<const InvariantAlgebra>& target);
FiniteModule twist(const FiniteModule& m, const std::shared_ptr<const GammaGroup>& grp);
// U_x: compose with the stored inverse of ev. For a partial transversal the
// remaining orbits must act by zero.
FiniteModule untwist(const FiniteModule& m, const std::vector<Point>& transversal);

// Move a module between truncations of the same kind: restriction along a
// section where the target is smaller, inflation where it is larger.
FiniteModule change_truncation(const FiniteModule& m, const std::shared_ptr<const LieAlgebra>& target);
// Smallest truncation of the same kind lying above both algebras.
std::shared_ptr<const LieAlgebra> join_algebras(const LieAlgebra& a, const LieAlgebra& b);
FiniteModule sum_common(const FiniteModule& a, const FiniteModule& b);
FiniteModule tensor_common(const FiniteModule& a, const FiniteModule& b);

// Smallest e >= 0 such that all jets of degree >= e at every point of the
// truncation act by zero.
int annihilator_exponent(const FiniteModule& m);
// eta = n * nu with n the composition length and nu the indicator of the
// support transversal; the annihilation is verified.
EtaFunction annihilator_eta(const FiniteModule& m, const std::vector<Point>& transversal = {});

using MultiplicityTable = std::map<PsiFunction, long>;

/// Joint weight spaces of the Levi copies h (x) 1 @ p, one weight per point.
struct LeviSpace {
  std::vector<Weight> weight;
  std::vector<Vec> basis;
};
std::vector<LeviSpace> levi_weight_spaces(const FiniteModule& m);

MultiplicityTable multiplicities(const FiniteModule& m);
std::string format_table(const MultiplicityTable& t);
// Points (untwisted) or orbit representatives (invariant algebra).
std::vector<Point> support(const FiniteModule& m);
bool is_maximal_weight(const FiniteModule& m, const PsiFunction& psi);

struct HomSpace {
  std::vector<Matrix> basis;  // dim N x dim M intertwiners
  std::size_t dim() const { return basis.size(); }
};
HomSpace hom_space(const FiniteModule& m, const FiniteModule& n);

struct IsoResult {
  bool iso = false;
  std::optional<Matrix> witness;  // invertible intertwiner M -> N
  std::string reason;
};
IsoResult is_isomorphic(const FiniteModule& m, const FiniteModule& n);

// Quotient of a cyclic module by its largest submodule meeting the weight
// space of the cyclic vector trivially.
FiniteModule head(const FiniteModule& m);

}  // namespace ema

#endif  // EMA_REPMOD_HPP
