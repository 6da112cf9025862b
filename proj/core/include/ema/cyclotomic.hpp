#ifndef EMA_CYCLOTOMIC_HPP
#define EMA_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ema {

using Rational = mpq_class;

std::string to_string(const Rational& q);

// Euler totient and the integer coefficients of the m-th cyclotomic polynomial
// (ascending degree, monic, length phi(m)+1).
int euler_phi(int m);
const std::vector<long>& cyclotomic_polynomial(int m);

/// Element of the cyclotomic field Q(zeta_m).
///
/// Stored as coordinates in the power basis 1, z, ..., z^{phi(m)-1} modulo the
/// m-th cyclotomic polynomial. Elements of different orders are embedded into
/// the least common order on demand. Rational values always carry order 1, so
/// the common case stays a single GMP rational.
class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& q) : q_(q) { q_.canonicalize(); }  // NOLINT
  Cyclo(long num, long den);

  // zeta_m^k, the k-th power of exp(2 pi i / m).
  static Cyclo zeta(int m, long k = 1);
  // Coordinates in the power basis of Q(zeta_m); reduced on construction.
  static Cyclo from_coeffs(int m, std::vector<Rational> coeffs);
  // Parses the format produced by str(): "3/2", "zeta_4", "1 - 2/3*zeta_8^3".
  static Cyclo parse(std::string_view text);

  int order() const { return m_; }
  bool is_zero() const { return m_ == 1 && q_ == 0; }
  bool is_one() const { return m_ == 1 && q_ == 1; }
  bool is_rational() const { return m_ == 1; }
  const Rational& rational() const;  // requires is_rational()
  // Power-basis coordinates (length phi(order())).
  std::vector<Rational> coeffs() const;
  // Coordinates after embedding into Q(zeta_m); m must be a multiple of order().
  std::vector<Rational> coeffs_in(int m) const;

  Cyclo inv() const;
  Cyclo pow(long e) const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o) { return *this *= o.inv(); }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  Cyclo operator-() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);

  // Total order used only for canonical sorting (not a field order).
  friend std::strong_ordering canonical_compare(const Cyclo& a, const Cyclo& b);

  std::string str() const;

 private:
  void normalize();
  Cyclo embedded(int m) const;

  int m_ = 1;
  Rational q_;                  // value when m_ == 1
  std::vector<Rational> c_;     // coordinates when m_ > 1
};

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

}  // namespace ema

#endif  // EMA_CYCLOTOMIC_HPP
