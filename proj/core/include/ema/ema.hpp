#ifndef EMA_EMA_HPP
#define EMA_EMA_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ema/coordalg.hpp"
#include "ema/group.hpp"
#include "ema/lie.hpp"
#include "ema/liealg.hpp"

namespace ema {

/// (g (x) A) / (g (x) I_eta) = sum over x in Supp eta of g (x) A/m_x^{eta(x)}.
///
/// Basis element index = offset(point) + mono * dim g + g-basis index.
class TruncatedAlgebra : public LieAlgebra {
 public:
  static std::shared_ptr<const TruncatedAlgebra> build(std::shared_ptr<const ChevalleyAlgebra> g, int nvars, const EtaFunction& eta);

  struct Coord {
    std::size_t point;
    std::size_t mono;
    std::size_t gb;
  };

  const ChevalleyAlgebra& g() const { return *g_; }
  const std::shared_ptr<const ChevalleyAlgebra>& g_ptr() const { return g_; }
  int nvars() const { return nvars_; }
  const EtaFunction& eta() const { return eta_; }
  std::size_t num_points() const { return eta_.size(); }
  const Point& point(std::size_t p) const { return eta_.entries()[p].first; }
  int exponent(std::size_t p) const { return eta_.entries()[p].second; }
  const JetShape& shape(std::size_t p) const { return *shapes_[p]; }
  long point_index(const Point& x) const;

  std::size_t index(std::size_t p, std::size_t mono, std::size_t gb) const { return offsets_[p] + mono * g_->dim() + gb; }
  Coord coord(std::size_t i) const;

  // a (x) f, with a in g coordinates.
  Vec element(const Vec& a, const LaurentFunction& f) const;
  // Restriction to a smaller truncation (rows: smaller basis, cols: this basis).
  Matrix projection_to(const TruncatedAlgebra& smaller) const;
  // gamma(a (x) u^beta @ y) = sigma_gamma(a) (x) s_gamma^{-beta} u^beta @ gamma y.
  Matrix gamma_matrix(const GammaGroup& grp, std::size_t elem) const;
  // g (x) (jets of degree >= min_degree[p] at point p).
  Subspace filtration(const std::vector<int>& min_degree) const;

 private:
  TruncatedAlgebra(std::shared_ptr<const ChevalleyAlgebra> g, int nvars, EtaFunction eta);
  std::shared_ptr<const ChevalleyAlgebra> g_;
  int nvars_;
  EtaFunction eta_;
  std::vector<std::shared_ptr<const JetShape>> shapes_;
  std::vector<std::size_t> offsets_;
};

/// Gamma-invariants of the orbit truncation for exponents that are constant
/// on orbits. The basis consists of averaged elements, row-reduced inside
/// each isotypic block of g, so every basis element is Xi-homogeneous.
class InvariantAlgebra : public LieAlgebra {
 public:
  // Exponents may be given at any points; they are moved to the smallest point
  // of each orbit. Points of one orbit must carry equal exponents.
  static std::shared_ptr<const InvariantAlgebra> build(std::shared_ptr<const GammaGroup> grp, const EtaFunction& eta);

  const GammaGroup& group() const { return *grp_; }
  const std::shared_ptr<const GammaGroup>& group_ptr() const { return grp_; }
  // Exponents at the orbit representatives.
  const EtaFunction& orbit_exponents() const { return reps_; }
  int exponent_of(const Point& x) const;
  const TruncatedAlgebra& orbit_truncation() const { return *orbit_; }
  const std::shared_ptr<const TruncatedAlgebra>& orbit_truncation_ptr() const { return orbit_; }
  // Columns: basis elements in orbit-truncation coordinates.
  const Matrix& inclusion() const { return incl_; }
  Vec embed(const Vec& x) const { return incl_.apply(x); }
  // Coordinates of an invariant element of the orbit truncation.
  Vec coordinates(const Vec& orbit_element) const;
  // Character index (GammaGroup numbering) of the g-part of basis element i.
  std::size_t xi_label(std::size_t i) const { return labels_xi_[i]; }
  // Basis element i is the orbit sum of v (x) u^mono @ representative.
  const TruncatedAlgebra::Coord& basis_coord(std::size_t i) const { return coords_[i]; }

  // Transversal completed with the representatives of the remaining orbits,
  // in the order of orbit_exponents().
  std::vector<Point> complete_transversal(const std::vector<Point>& partial) const;
  // Exponents carried over to the given transversal.
  EtaFunction exponents_at(const std::vector<Point>& transversal) const;

  // Invariant elements whose orbit-truncation components lie in the given
  // filtration (coordinates in this algebra).
  Subspace invariant_part(const Subspace& orbit_subspace) const;
  Matrix projection_to(const InvariantAlgebra& smaller) const;

 private:
  InvariantAlgebra() = default;
  std::shared_ptr<const GammaGroup> grp_;
  EtaFunction reps_;
  std::shared_ptr<const TruncatedAlgebra> orbit_;
  Matrix incl_;
  Matrix ginv_;  // inverse of the matrix whose columns are the homogeneous basis of g
  std::vector<std::size_t> rep_index_;  // orbit-truncation point index of each representative
  std::vector<TruncatedAlgebra::Coord> coords_;  // (representative, monomial, homogeneous g index)
  std::vector<std::size_t> labels_xi_;
};

/// Evaluation at a transversal: invariant algebra -> TruncatedAlgebra(eta).
struct EvIso {
  std::shared_ptr<const InvariantAlgebra> source;
  std::shared_ptr<const TruncatedAlgebra> target;
  std::vector<Point> transversal;
  Matrix ev;       // target.dim x source.dim
  Matrix inverse;  // source.dim x target.dim
};

// Support of eta must meet every orbit at most once. When `verify` is set,
// bracket compatibility is checked on every basis pair.
EvIso ev_gamma_iso(const std::shared_ptr<const GammaGroup>& grp, const EtaFunction& eta, bool verify = true);
// Same map for an existing invariant algebra and a (possibly partial) transversal.
EvIso ev_iso(const std::shared_ptr<const InvariantAlgebra>& inv, const std::vector<Point>& transversal);

struct LiftResult {
  int n = 0;
  Cyclo xi;
  LaurentFunction f1, f2;
  // alpha = sum_k (g basis k) (x) components[k]
  std::vector<LaurentFunction> components;
  bool invariant = false;
  bool matches_at_x = false;
  bool vanishes_elsewhere = false;
  bool ok() const { return invariant && matches_at_x && vanishes_elsewhere; }
};

// Jets vanish at the support orbits other than that of x.
// f1 interpolates 0 at x and xi (xi^n = -1) on the rest of Gamma . Supp eta,
// f2 = f (1 + f1^n)^n and alpha = sum_gamma sigma_gamma(a) (x) gamma . f2.
LiftResult constructive_lift(const GammaGroup& grp, const Vec& a, const LaurentFunction& f, const Point& x,
                             const EtaFunction& eta, int field_order);

// ((g (x) I)^Gamma)^m = (g (x) I^m)^Gamma for I the product of m_z^kappa over
// the orbits of `points`, compared inside the orbit truncation of exponent E.
bool power_ideal_check(const std::shared_ptr<const GammaGroup>& grp, const std::vector<Point>& points, int kappa, int m,
                       int ambient_exponent);
// (g (x) I_eta)^Gamma = (g (x) I~_eta)^Gamma inside the orbit truncation of exponent E.
bool ideal_equality_check(const std::shared_ptr<const GammaGroup>& grp, const EtaFunction& eta, int ambient_exponent);

}  // namespace ema

#endif  // EMA_EMA_HPP
