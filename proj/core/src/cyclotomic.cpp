#include "ema/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ema/error.hpp"

namespace ema {

std::string to_string(const Rational& q) { return q.get_str(); }

int euler_phi(int m) {
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

using Poly = std::vector<Rational>;

// x^k mod Phi_m for 0 <= k < m.
struct PowerTable {
  int phi = 0;
  std::vector<Poly> pow;
};

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<long> compute_cyclotomic(int m) {
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& div = cyclotomic_polynomial(d);
    // exact division by a monic integer polynomial
    std::size_t dn = num.size() - 1;
    std::size_t dd = div.size() - 1;
    std::vector<long> quot(dn - dd + 1, 0);
    for (std::size_t i = dn + 1; i-- > dd;) {
      long c = num[i];
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    num = std::move(quot);
  }
  return num;
}

const PowerTable& power_table(int m) {
  static std::map<int, std::unique_ptr<PowerTable>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
  }
  const auto& phi_poly = cyclotomic_polynomial(m);
  auto table = std::make_unique<PowerTable>();
  const int phi = euler_phi(m);
  table->phi = phi;
  table->pow.reserve(static_cast<std::size_t>(m));
  Poly cur(static_cast<std::size_t>(phi), 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    table->pow.push_back(cur);
    // multiply by x and reduce by the monic Phi_m
    Poly next(static_cast<std::size_t>(phi) + 1, 0);
    for (int i = 0; i < phi; ++i) next[static_cast<std::size_t>(i) + 1] = cur[static_cast<std::size_t>(i)];
    Rational top = next[static_cast<std::size_t>(phi)];
    if (top != 0) {
      for (int i = 0; i <= phi; ++i) next[static_cast<std::size_t>(i)] -= top * phi_poly[static_cast<std::size_t>(i)];
    }
    next.pop_back();
    cur = std::move(next);
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = cache.emplace(m, std::move(table));
  return *it->second;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of polynomial division over Q.
std::pair<Poly, Poly> divmod(Poly num, const Poly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {Poly{}, num};
  Poly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    if (num[i] == 0) continue;
    Rational c = num[i] / den[dd];
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  num.resize(dd);
  trim(num);
  trim(quot);
  return {quot, num};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Reduce arbitrary exponents into the power basis of order m.
std::vector<Rational> reduce(int m, const Poly& coeffs) {
  const auto& table = power_table(m);
  const std::size_t phi = static_cast<std::size_t>(table.phi);
  std::vector<Rational> out(phi, 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    std::size_t e = k % static_cast<std::size_t>(m);
    if (e < phi) {
      out[e] += coeffs[k];
    } else {
      const Poly& p = table.pow[e];
      for (std::size_t i = 0; i < phi; ++i)
        if (p[i] != 0) out[i] += coeffs[k] * p[i];
    }
  }
  return out;
}

// Solves a small dense system exactly; returns false when inconsistent.
bool solve_small(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  x.assign(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return true;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int m) {
  if (m < 1) throw InputError("cyclotomic order must be positive");
  static std::map<int, std::vector<long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<long> poly = (m == 1) ? std::vector<long>{-1, 1} : compute_cyclotomic(m);
  return cache.emplace(m, std::move(poly)).first->second;
}

Cyclo::Cyclo(long num, long den) : q_(num, den) {
  if (den == 0) throw Error("division by zero");
  q_.canonicalize();
}

Cyclo Cyclo::zeta(int m, long k) {
  if (m < 1) throw InputError("root of unity order must be positive");
  long e = ((k % m) + m) % m;
  Poly p(static_cast<std::size_t>(e) + 1, 0);
  p[static_cast<std::size_t>(e)] = 1;
  return from_coeffs(m, std::move(p));
}

Cyclo Cyclo::from_coeffs(int m, std::vector<Rational> coeffs) {
  if (m < 1) throw InputError("cyclotomic order must be positive");
  for (auto& c : coeffs) c.canonicalize();
  Cyclo out;
  if (m == 1) {
    for (auto& c : coeffs) out.q_ += c;
    return out;
  }
  out.m_ = m;
  out.c_ = reduce(m, coeffs);
  out.normalize();
  return out;
}

const Rational& Cyclo::rational() const {
  if (m_ != 1) throw Error("element is not rational: " + str());
  return q_;
}

std::vector<Rational> Cyclo::coeffs() const {
  if (m_ == 1) return {q_};
  return c_;
}

std::vector<Rational> Cyclo::coeffs_in(int m) const {
  if (m % m_ != 0) throw Error("cannot embed Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" + std::to_string(m) + ")");
  if (m == m_) return coeffs();
  if (m_ == 1) {
    std::vector<Rational> v(static_cast<std::size_t>(euler_phi(m)), 0);
    v[0] = q_;
    return v;
  }
  const long step = m / m_;
  Poly spread(static_cast<std::size_t>(step) * c_.size(), 0);
  for (std::size_t j = 0; j < c_.size(); ++j) spread[j * static_cast<std::size_t>(step)] = c_[j];
  return reduce(m, spread);
}

Cyclo Cyclo::embedded(int m) const {
  Cyclo out;
  out.m_ = m;
  out.c_ = coeffs_in(m);
  return out;
}

void Cyclo::normalize() {
  if (m_ == 1) return;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  q_ = c_.empty() ? Rational(0) : c_[0];
  c_.clear();
  m_ = 1;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (m_ == 1 && o.m_ == 1) {
    q_ += o.q_;
    return *this;
  }
  const int m = std::lcm(m_, o.m_);
  auto a = coeffs_in(m);
  auto b = o.coeffs_in(m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  m_ = m;
  c_ = std::move(a);
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo Cyclo::operator-() const {
  Cyclo out = *this;
  out.q_ = -out.q_;
  for (auto& c : out.c_) c = -c;
  return out;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (o.m_ == 1) {
    if (m_ == 1) {
      q_ *= o.q_;
    } else {
      for (auto& c : c_) c *= o.q_;
      normalize();
    }
    return *this;
  }
  if (m_ == 1) {
    Cyclo out = o;
    for (auto& c : out.c_) c *= q_;
    out.normalize();
    return *this = std::move(out);
  }
  const int m = std::lcm(m_, o.m_);
  auto a = coeffs_in(m);
  auto b = o.coeffs_in(m);
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) prod[i + j] += a[i] * b[j];
  }
  m_ = m;
  c_ = reduce(m, prod);
  normalize();
  return *this;
}

Cyclo Cyclo::inv() const {
  if (is_zero()) throw Error("division by zero");
  if (m_ == 1) return Cyclo(Rational(1 / q_));
  // extended Euclid: s * a == r0 (mod Phi_m) with r0 constant
  const auto& phi_poly = cyclotomic_polynomial(m_);
  Poly r0(phi_poly.begin(), phi_poly.end());
  Poly r1 = c_;
  trim(r1);
  Poly s0, s1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly next = poly_sub(s0, poly_mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  if (r0.size() != 1) throw Error("division by zero");
  for (auto& c : s0) c /= r0[0];
  return from_coeffs(m_, s0);
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclo result(1);
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.m_ == 1 && b.m_ == 1) return a.q_ == b.q_;
  if (a.m_ == b.m_) return a.c_ == b.c_;
  const int m = std::lcm(a.m_, b.m_);
  return a.coeffs_in(m) == b.coeffs_in(m);
}

namespace {

// Smallest order d | m with x in Q(zeta_d), with its coordinates there.
std::pair<int, std::vector<Rational>> minimal_form(const Cyclo& x) {
  const int m = x.order();
  const auto target = x.coeffs();
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const int phid = euler_phi(d);
    // columns: embeddings of the basis z_d^j into Q(zeta_m)
    std::vector<std::vector<Rational>> a(target.size(), std::vector<Rational>(static_cast<std::size_t>(phid), 0));
    for (int j = 0; j < phid; ++j) {
      auto col = Cyclo::zeta(m, static_cast<long>(j) * (m / d)).coeffs_in(m);
      for (std::size_t i = 0; i < col.size(); ++i) a[i][static_cast<std::size_t>(j)] = col[i];
    }
    std::vector<Rational> sol;
    if (solve_small(a, target, sol)) return {d, sol};
  }
  return {m, target};
}

}  // namespace

std::strong_ordering canonical_compare(const Cyclo& a, const Cyclo& b) {
  auto fa = minimal_form(a);
  auto fb = minimal_form(b);
  if (fa.first != fb.first) return fa.first <=> fb.first;
  for (std::size_t i = 0; i < fa.second.size(); ++i) {
    int c = cmp(fa.second[i], fb.second[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string Cyclo::str() const {
  if (m_ == 1) return to_string(q_);
  auto [d, coeffs] = minimal_form(*this);
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Rational c = coeffs[j];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational mag = abs(c);
    if (j == 0) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << "zeta_" << d;
      if (j > 1) os << "^" << j;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw InputError("empty number");
  for (char ch : s)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
      throw InputError("malformed rational '" + s + "'");
  Rational q;
  try {
    q = Rational(s[0] == '+' ? s.substr(1) : s);
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational '" + s + "'");
  }
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// "zeta_m" or "zeta_m^k"
Cyclo parse_root(const std::string& s) {
  if (s.rfind("zeta_", 0) != 0) throw InputError("malformed root of unity '" + s + "'");
  std::string rest = s.substr(5);
  long k = 1;
  auto caret = rest.find('^');
  std::string order_part = rest.substr(0, caret);
  if (caret != std::string::npos) {
    try {
      k = std::stol(rest.substr(caret + 1));
    } catch (const std::exception&) {
      throw InputError("malformed exponent in '" + s + "'");
    }
  }
  int m = 0;
  try {
    m = std::stoi(order_part);
  } catch (const std::exception&) {
    throw InputError("malformed order in '" + s + "'");
  }
  if (m < 1) throw InputError("root of unity order must be positive in '" + s + "'");
  return Cyclo::zeta(m, k);
}

Cyclo parse_term(const std::string& term) {
  auto star = term.find('*');
  if (star != std::string::npos) {
    return Cyclo(parse_rational(strip(term.substr(0, star)))) * parse_root(strip(term.substr(star + 1)));
  }
  if (term.rfind("zeta_", 0) == 0) return parse_root(term);
  return Cyclo(parse_rational(term));
}

}  // namespace

Cyclo Cyclo::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw InputError("empty field element");
  Cyclo total;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  std::string cur;
  auto flush = [&] {
    std::string t = strip(cur);
    if (t.empty()) throw InputError("malformed field element '" + s + "'");
    Cyclo v = parse_term(t);
    total += negative ? -v : v;
    cur.clear();
  };
  for (; i < s.size(); ++i) {
    char ch = s[i];
    // a sign separates terms unless it belongs to an exponent or a fraction
    if ((ch == '+' || ch == '-') && !cur.empty() && cur.back() != '^' && strip(cur) != "") {
      flush();
      negative = ch == '-';
      continue;
    }
    cur.push_back(ch);
  }
  flush();
  return total;
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.str(); }

}  // namespace ema
