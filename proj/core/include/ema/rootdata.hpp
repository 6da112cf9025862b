#ifndef EMA_ROOTDATA_HPP
#define EMA_ROOTDATA_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ema/cyclotomic.hpp"

namespace ema {

/// Integral weight in the fundamental-weight basis.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 0)); }

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  bool is_dominant() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  Weight operator-() const;

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  // "(2)" or "(1,0,2)"
  std::string str() const;
};

/// Diagram automorphism of A_n: identity or the flip i -> n+1-i.
struct DiagramSymmetry {
  std::vector<int> perm;  // perm[i] = tau(i), 0-based

  static DiagramSymmetry identity(int rank);
  static DiagramSymmetry flip(int rank);

  bool is_identity() const;
  DiagramSymmetry compose(const DiagramSymmetry& o) const;  // this after o
  DiagramSymmetry inverse() const;
  Weight act(const Weight& w) const;

  friend bool operator==(const DiagramSymmetry&, const DiagramSymmetry&) = default;
};

Weight diagram_act(const DiagramSymmetry& tau, const Weight& w);

/// Root datum of type A_n for 1 <= n <= 3.
///
/// Positive roots alpha_i + ... + alpha_j are stored in simple-root
/// coordinates, ordered by height and then by first index.
class RootDatum {
 public:
  explicit RootDatum(int rank);

  int rank() const { return n_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<std::vector<int>>& positive_roots() const { return roots_; }
  // Index of the simple root alpha_i among positive_roots().
  std::size_t simple_root_index(int i) const;
  // Index of the positive root with simple-root coordinates k, or -1.
  int root_index(const std::vector<int>& k) const;
  int root_height(std::size_t root) const;
  // First and last simple root of alpha_i + ... + alpha_j (0-based, inclusive).
  std::pair<int, int> root_span(std::size_t root) const;

  Weight root_weight(std::size_t root) const;         // alpha in fundamental coordinates
  Weight from_root_coords(const std::vector<int>& k) const;
  std::vector<Rational> root_coords(const Weight& w) const;
  // Integral simple-root coordinates of w, if w lies in the root lattice.
  std::optional<std::vector<int>> integral_root_coords(const Weight& w) const;

  Rational height(const Weight& w) const;
  // mu <= lambda in the dominance order.
  bool dominance_leq(const Weight& mu, const Weight& lambda) const;
  Weight w0(const Weight& w) const;
  Weight rho() const;
  Weight highest_root() const;
  int highest_root_height() const { return n_; }
  // lambda(h_theta)
  int coroot_theta(const Weight& w) const;
  // Invariant form with (alpha, alpha) = 2.
  Rational inner(const Weight& a, const Weight& b) const;
  // Dominant representative of the Weyl orbit of w.
  Weight dominant_conjugate(const Weight& w) const;

  // All mu with w0(lambda) <= mu <= lambda.
  std::vector<Weight> weight_interval(const Weight& lambda) const;
  std::map<Weight, long> freudenthal_mults(const Weight& lambda) const;
  long weyl_dimension(const Weight& lambda) const;

  friend bool operator==(const RootDatum& a, const RootDatum& b) { return a.n_ == b.n_; }

 private:
  int n_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> cartan_inv_;
  std::vector<std::vector<int>> roots_;
};

}  // namespace ema

#endif  // EMA_ROOTDATA_HPP
