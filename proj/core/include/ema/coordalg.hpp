#ifndef EMA_COORDALG_HPP
#define EMA_COORDALG_HPP

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ema/group.hpp"
#include "ema/linalg.hpp"

namespace ema {

using Exponent = std::vector<int>;

/// Rational point of the torus (k^x)^n.
struct Point {
  std::vector<Cyclo> coords;

  Point() = default;
  explicit Point(std::vector<Cyclo> c);
  int nvars() const { return static_cast<int>(coords.size()); }
  // "1", "-1", "(1,zeta_4)"
  std::string str() const;

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);
};

/// Laurent polynomial in t_1..t_n with cyclotomic coefficients.
class LaurentFunction {
 public:
  explicit LaurentFunction(int nvars = 1) : n_(nvars) {}
  static LaurentFunction constant(int nvars, const Cyclo& c);
  static LaurentFunction variable(int nvars, int i);  // t_{i+1}
  static LaurentFunction monomial(int nvars, const Exponent& e, const Cyclo& c = Cyclo(1));

  int nvars() const { return n_; }
  const std::map<Exponent, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Cyclo coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Cyclo& c);

  Cyclo evaluate(const Point& x) const;
  LaurentFunction pow(unsigned e) const;

  LaurentFunction& operator+=(const LaurentFunction& o);
  LaurentFunction& operator-=(const LaurentFunction& o);
  LaurentFunction& operator*=(const Cyclo& c);
  friend LaurentFunction operator+(LaurentFunction a, const LaurentFunction& b) { return a += b; }
  friend LaurentFunction operator-(LaurentFunction a, const LaurentFunction& b) { return a -= b; }
  friend LaurentFunction operator*(LaurentFunction a, const Cyclo& c) { return a *= c; }
  friend LaurentFunction operator*(const LaurentFunction& a, const LaurentFunction& b);
  friend bool operator==(const LaurentFunction& a, const LaurentFunction& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  // "1/2*t + 1/2", "t1^-1*t2"; variables are "t" when n = 1.
  std::string str() const;

 private:
  int n_;
  std::map<Exponent, Cyclo> terms_;
};

/// Monomials u^beta of total degree < order in n variables; basis of A/m_x^order.
/// Ordered by total degree, then lexicographically descending (u1 before u2).
class JetShape {
 public:
  static std::shared_ptr<const JetShape> get(int nvars, int order);

  int nvars() const { return n_; }
  int order() const { return e_; }
  std::size_t size() const { return monos_.size(); }
  const Exponent& mono(std::size_t i) const { return monos_[i]; }
  int degree(std::size_t i) const { return deg_[i]; }
  // Index of a monomial, or -1 when its degree is too large.
  long index(const Exponent& e) const;
  // Index of the product of monomials i and j, or -1 when truncated.
  long product(std::size_t i, std::size_t j) const { return prod_[i * size() + j]; }
  std::string mono_str(std::size_t i) const;

 private:
  JetShape(int nvars, int order);
  int n_, e_;
  std::vector<Exponent> monos_;
  std::vector<int> deg_;
  std::map<Exponent, std::size_t> index_;
  std::vector<long> prod_;
};

Vec jet_mul(const JetShape& s, const Vec& a, const Vec& b);

/// Jet of f at x below total degree e, in the JetShape(n, e) basis.
Vec jet_expand(const LaurentFunction& f, const Point& x, int e);

/// Finite mapping from points to positive exponents, kept sorted by point.
class EtaFunction {
 public:
  EtaFunction() = default;
  void set(const Point& x, int e);  // e = 0 removes x
  int operator()(const Point& x) const;
  const std::vector<std::pair<Point, int>>& entries() const { return entries_; }
  std::vector<Point> support() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int max() const;
  // pointwise max / pointwise <=
  EtaFunction join(const EtaFunction& o) const;
  bool leq(const EtaFunction& o) const;
  EtaFunction scaled(int k) const;
  std::string str() const;
  friend bool operator==(const EtaFunction&, const EtaFunction&) = default;

 private:
  std::vector<std::pair<Point, int>> entries_;
};

/// A / I_eta realized as the product of the local jet algebras.
class QuotientAlgebra {
 public:
  QuotientAlgebra(int nvars, EtaFunction eta);

  const EtaFunction& eta() const { return eta_; }
  std::size_t dim() const { return dim_; }
  std::size_t offset(std::size_t point) const { return offsets_[point]; }
  const JetShape& shape(std::size_t point) const { return *shapes_[point]; }
  Vec expand(const LaurentFunction& f) const;
  Vec mul(const Vec& a, const Vec& b) const;
  // Matrix of gamma on this quotient; requires Gamma-stable support and exponents.
  Matrix gamma_matrix(const GammaGroup& grp, std::size_t elem) const;
  // Subspace of classes of functions vanishing to order >= k at every point.
  Subspace power_filtration(int k) const;

 private:
  int n_;
  EtaFunction eta_;
  std::vector<std::shared_ptr<const JetShape>> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

Point gamma_point(const GammaGroup& grp, std::size_t elem, const Point& x);
// (gamma . f)(z) = f(gamma^{-1} z)
LaurentFunction gamma_act(const GammaGroup& grp, std::size_t elem, const LaurentFunction& f);
// Orbit in group-element order, without repetitions.
std::vector<Point> gamma_orbit(const GammaGroup& grp, const Point& x);
// Smallest point of the orbit.
Point orbit_representative(const GammaGroup& grp, const Point& x);
bool same_orbit(const GammaGroup& grp, const Point& x, const Point& y);

// |Gamma|^{-1} sum_gamma chi(gamma)^{-1} gamma . f
LaurentFunction xi_component(const GammaGroup& grp, const LaurentFunction& f, std::size_t chi);

struct FreenessReport {
  bool free = true;
  bool xstar = true;
  std::vector<std::string> violations;
  bool ok() const { return free && xstar; }
};
FreenessReport validate_free_and_Xstar(const GammaGroup& grp, const std::vector<Point>& points);

// Solves on the monomial ladder 1, t_n, ..., t_1, t_n^2, ... (total degree,
// then lexicographically ascending), adding one monomial at a time until the
// system is consistent; free coefficients are zero.
LaurentFunction interpolate(int nvars, const std::vector<std::pair<Point, Cyclo>>& assignments);

}  // namespace ema

#endif  // EMA_COORDALG_HPP
