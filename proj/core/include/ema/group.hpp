#ifndef EMA_GROUP_HPP
#define EMA_GROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "ema/liealg.hpp"

namespace ema {

/// Cyclic generator of Gamma: z_i -> zeta_d^{c_i} z_i on the torus and a
/// torus-times-diagram automorphism of g built with zeta_d.
struct GammaGenerator {
  int order = 1;
  std::vector<int> scaling;
  DiagramSymmetry tau;
  std::vector<int> torus;
};

struct CheckRecord {
  std::string name;
  bool ok = true;
  std::string detail;
};

/// Finite abelian group Z/d_1 x ... x Z/d_k acting on the torus (k^x)^n and
/// on g. Elements are numbered in mixed radix with the first generator
/// varying slowest; element 0 is the identity.
///
/// Characters carry labels r in Z/d_1 x ... x Z/d_k, with the label r standing
/// for gamma_k -> zeta_{d_k}^{-r_k}. Under this convention t^beta lies in the
/// class <c, beta> and e_i (scaled by zeta^{a_i}) in the class -a_i.
class GammaGroup {
 public:
  GammaGroup(std::shared_ptr<const ChevalleyAlgebra> g, int num_vars, std::vector<GammaGenerator> gens);
  static std::shared_ptr<const GammaGroup> trivial(std::shared_ptr<const ChevalleyAlgebra> g, int num_vars);

  // Validation records for the generator data (automorphism axioms, declared
  // orders, pairwise commutation, freeness). The constructor throws on the
  // first failure; this variant reports all of them.
  static std::vector<CheckRecord> check(const ChevalleyAlgebra& g, int num_vars, const std::vector<GammaGenerator>& gens);

  const ChevalleyAlgebra& g() const { return *g_; }
  const std::shared_ptr<const ChevalleyAlgebra>& g_ptr() const { return g_; }
  int num_vars() const { return nvars_; }
  const std::vector<GammaGenerator>& generators() const { return gens_; }
  const std::string& key() const { return key_; }

  std::size_t size() const { return size_; }
  std::vector<int> exponents(std::size_t elem) const;
  std::size_t element(const std::vector<int>& exps) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::string element_name(std::size_t a) const;

  const Matrix& sigma(std::size_t elem) const { return sigma_[elem]; }
  const Matrix& sigma_inverse(std::size_t elem) const { return sigma_[inverse(elem)]; }
  // s_gamma: gamma . z = (s_1 z_1, ..., s_n z_n)
  const std::vector<Cyclo>& scaling(std::size_t elem) const { return scale_[elem]; }
  DiagramSymmetry out_part(std::size_t elem) const;

  // Characters are indexed like elements (labels = exponent tuples).
  std::vector<int> character_label(std::size_t chi) const { return exponents(chi); }
  Cyclo character_value(std::size_t chi, std::size_t elem) const;
  std::size_t character_product(std::size_t a, std::size_t b) const { return multiply(a, b); }
  std::size_t character_of_monomial(const std::vector<int>& beta) const;
  std::string character_name(std::size_t chi) const;

  // Every non-identity element has a nontrivial scaling vector.
  bool acts_freely() const;
  // Isotypic projector on g for a character, and a homogeneous basis of g.
  Matrix g_projector(std::size_t chi) const;
  const std::vector<std::pair<std::size_t, Vec>>& g_homogeneous_basis() const { return ghom_; }

 private:
  std::shared_ptr<const ChevalleyAlgebra> g_;
  int nvars_;
  std::vector<GammaGenerator> gens_;
  std::size_t size_ = 1;
  std::vector<Matrix> sigma_;
  std::vector<std::vector<Cyclo>> scale_;
  std::vector<std::pair<std::size_t, Vec>> ghom_;
  std::string key_;
};

}  // namespace ema

#endif  // EMA_GROUP_HPP
