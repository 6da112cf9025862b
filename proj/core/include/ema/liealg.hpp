#ifndef EMA_LIEALG_HPP
#define EMA_LIEALG_HPP

#include <memory>
#include <string>
#include <vector>

#include "ema/lie.hpp"
#include "ema/module.hpp"
#include "ema/rootdata.hpp"

namespace ema {

enum class RootKind { E, H, F };

/// sl_{n+1} with Chevalley basis e_beta (positive roots), h_i, f_beta.
///
/// Basis order: e_beta in positive_roots() order, then h_1..h_n, then f_beta.
/// e_beta for beta = alpha_i + ... + alpha_j is the matrix unit E_{i,j+1}.
class ChevalleyAlgebra : public LieAlgebra {
 public:
  explicit ChevalleyAlgebra(int rank);

  const RootDatum& root_datum() const { return rd_; }
  int rank() const { return rd_.rank(); }
  std::size_t num_roots() const { return rd_.positive_roots().size(); }

  std::size_t e(std::size_t root) const { return root; }
  std::size_t h(int i) const { return num_roots() + static_cast<std::size_t>(i); }
  std::size_t f(std::size_t root) const { return num_roots() + static_cast<std::size_t>(rank()) + root; }
  std::size_t e_simple(int i) const { return e(rd_.simple_root_index(i)); }
  std::size_t f_simple(int i) const { return f(rd_.simple_root_index(i)); }

  RootKind kind(std::size_t b) const;
  // Root index of an e or f basis element; Cartan index for h.
  std::size_t root_of(std::size_t b) const;
  // Weight of the basis element under the adjoint action of the Cartan.
  Weight weight_of(std::size_t b) const;

  // Traceless (n+1)x(n+1) matrix of a basis element.
  const Matrix& matrix(std::size_t b) const { return mats_.at(b); }
  Matrix to_matrix(const Vec& x) const;
  Vec from_matrix(const Matrix& m) const;

 private:
  RootDatum rd_;
  std::vector<Matrix> mats_;
};

std::shared_ptr<const ChevalleyAlgebra> build_sl(int n_plus_1);

/// Torus-scaling times diagram automorphism of sl_{n+1}.
struct GAutomorphism {
  DiagramSymmetry tau;
  std::vector<int> torus;
  Cyclo zeta;
  int order = 1;    // smallest d with sigma^d = id
  Matrix map;       // columns are images of basis elements
  Matrix inverse;

  Vec apply(const Vec& x) const { return map.apply(x); }
  const DiagramSymmetry& out_part() const { return tau; }
  bool is_identity() const { return map == Matrix::identity(map.rows()); }
};

// Defined on generators by e_i -> zeta^{a_i} e_{tau(i)}, f_i -> zeta^{-a_i}
// f_{tau(i)}, h_i -> h_{tau(i)}; throws CheckFailure("not an automorphism")
// when the bracket extension fails.
GAutomorphism build_automorphism(const ChevalleyAlgebra& g, const DiagramSymmetry& tau, const std::vector<int>& a,
                                 const Cyclo& zeta);

// Smallest d <= limit with m^d = 1, or 0.
int matrix_order(const Matrix& m, int limit = 256);

// V(lambda) as the cyclic closure of the highest weight vector inside a tensor
// product of exterior powers of the natural module. Results are cached.
FiniteModule irreducible_module(const std::shared_ptr<const ChevalleyAlgebra>& g, const Weight& lambda,
                                std::size_t max_ambient = 1u << 16);

}  // namespace ema

#endif  // EMA_LIEALG_HPP
