#ifndef EMA_WEYL_HPP
#define EMA_WEYL_HPP

#include <memory>
#include <string>
#include <vector>

#include "ema/repmod.hpp"

namespace ema {

struct WeylOptions {
  int extra_buffer = 0;    // layers beyond ht(theta)
  int extra_n = 0;         // added to N = max(1, lambda(h_theta))
  bool reverse_order = false;
  bool certify = true;
  std::size_t max_monomials = 0;  // 0: EMA_WEYL_MAX_DIM or 4096
};

struct WeylCertificate {
  std::vector<std::string> passed;
  std::size_t dim_extra_buffer = 0;
  std::size_t dim_extra_n = 0;
  std::size_t dim_reversed = 0;
};

/// Local Weyl module W(psi) over TruncatedAlgebra(N on Supp psi).
///
/// The basis consists of PBW monomials y_1 ... y_k w with y_1 >= ... >= y_k in
/// the generator order (root height, root index, point, jet index).
struct WeylModule {
  PsiFunction psi;
  FiniteModule module;
  int n = 1;       // truncation exponent
  int depth = 0;   // height(lambda - w0 lambda)
  int bound = 0;   // largest drop kept during straightening
  std::size_t monomials = 0;
  std::vector<std::string> basis_labels;
  WeylCertificate certificate;
};

// Cap on enumerated PBW monomials from EMA_WEYL_MAX_DIM (default 4096).
std::size_t weyl_max_dim();

WeylModule weyl_module(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& psi,
                       const WeylOptions& opts = {});

// W_Gamma(psi) = T(W(psi_x)).
FiniteModule twisted_weyl(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi,
                          const std::vector<Point>& transversal);
FiniteModule twisted_weyl(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi);

// Every transversal of the support orbits gives an isomorphic module.
bool check_choice_independence(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi);
// W(psi_x) pulled back along gamma^{-1} is isomorphic to W(psi_{gamma x}).
bool check_gamma_twist(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& psi_x, std::size_t gamma);

// Pull back along gamma^{-1}: TruncatedAlgebra(eta at gamma x) -> TruncatedAlgebra(eta at x).
FiniteModule gamma_pullback(const GammaGroup& grp, const FiniteModule& m, std::size_t gamma);

PsiFunction psi_sum(const PsiFunction& a, const PsiFunction& b);

struct TensorReport {
  std::size_t dim_sum = 0;     // dim W(psi + psi')
  std::size_t dim_tensor = 0;  // dim W(psi) (x) W(psi')
  bool iso = false;
};
TensorReport tensor_check(const std::shared_ptr<const ChevalleyAlgebra>& g, int nvars, const PsiFunction& a,
                          const PsiFunction& b);
TensorReport tensor_check(const std::shared_ptr<const GammaGroup>& grp, const PsiFunction& a, const PsiFunction& b);

struct HwQuotient {
  PsiFunction psi;
  Matrix surjection;  // W(psi) -> M
  std::size_t rank = 0;
};
// Reads psi off the cyclic vector and exhibits W(psi) ->> M.
HwQuotient hw_quotient_check(const FiniteModule& m);

}  // namespace ema

#endif  // EMA_WEYL_HPP
