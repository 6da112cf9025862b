#ifndef EMA_HOMOLOGY_HPP
#define EMA_HOMOLOGY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ema/repmod.hpp"

namespace ema {

/// Chevalley-Eilenberg cochains of L with coefficients in V, degrees 0 to 2.
///
/// C^1 coordinates: c[x * dim V + i] is the i-th component of c(b_x).
/// C^2 coordinates: one block of dim V per pair x < y, pairs in
/// lexicographic order.
class CEComplex {
 public:
  explicit CEComplex(FiniteModule v);

  const LieAlgebra& algebra() const { return v_.algebra(); }
  const FiniteModule& coefficients() const { return v_; }
  std::size_t dim_c0() const { return v_.dim(); }
  std::size_t dim_c1() const { return algebra().dim() * v_.dim(); }
  std::size_t dim_c2() const;

  // (d0 v)(x) = x.v
  const Matrix& d0() const { return d0_; }
  // (d1 c)(x, y) = x.c(y) - y.c(x) - c([x, y])
  Vec d1(const Vec& c) const;
  // Row (pair (x, y), component i) of d1, dense.
  Vec d1_row(std::size_t x, std::size_t y, std::size_t i) const;
  Matrix d1_matrix() const;
  // d1 d0 = 0, checked column by column.
  bool check() const;

 private:
  FiniteModule v_;
  Matrix d0_;
};

struct H1Result {
  std::size_t dim = 0;
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::vector<Vec> cocycles;  // representatives of a basis of H^1
};

H1Result h1(const FiniteModule& v);
// H^1(L, Hom(M, N)).
H1Result ext1(const FiniteModule& m, const FiniteModule& n);

struct ExtRung {
  int exponent = 0;
  std::size_t algebra_dim = 0;
  std::size_t dim = 0;
};

struct ExtLadder {
  std::vector<ExtRung> rungs;
  bool stabilized = false;  // last two rungs agree
  bool monotone = true;     // dims weakly increase
  std::vector<std::size_t> dims() const;
};

// Rung i: both modules moved to the truncation with exponent base + i on every
// point (orbit) of either support. Default base: 2 max(a_M, a_N, 1).
ExtLadder ext1_ladder(const FiniteModule& m, const FiniteModule& n, int rungs, std::optional<int> base = std::nullopt);

struct BatteryEntry {
  PsiFunction phi;
  Rational height;
  std::size_t hom_dim = 0;
  ExtLadder ladder;
  bool vanishes() const;
};

struct BatteryReport {
  PsiFunction psi;
  Rational height;
  int bound = 0;
  int rungs = 0;
  std::vector<BatteryEntry> entries;
  bool pass = false;
};

// All phi (equivariant when M lives over an invariant algebra) supported on the
// support points or orbits of M with coordinates <= bound, sorted.
std::vector<PsiFunction> window_candidates(const FiniteModule& m, int bound);
// All phi (equivariant when M lives over an invariant algebra) supported on the
// support points or orbits of M, coordinates <= bound, height(phi) < height(psi).
std::vector<PsiFunction> lower_candidates(const FiniteModule& m, const PsiFunction& psi, int bound);

// Hom(M, V(phi)) and the Ext ladder against every lower candidate. M must be
// maximal weight of maximal weight psi. bound < 0: largest coordinate of psi.
BatteryReport characterization_battery(const FiniteModule& m, const PsiFunction& psi, int bound = -1, int rungs = 3);

// Irreducible evaluation module V(phi) over the algebra family of `like`.
FiniteModule irreducible_like(const FiniteModule& like, const PsiFunction& phi);

}  // namespace ema

#endif  // EMA_HOMOLOGY_HPP
