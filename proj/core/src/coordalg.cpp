#include "ema/coordalg.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ema/error.hpp"

namespace ema {

Point::Point(std::vector<Cyclo> c) : coords(std::move(c)) {
  for (const auto& x : coords)
    if (x.is_zero()) throw InputError("torus points need nonzero coordinates");
}

std::string Point::str() const {
  if (coords.size() == 1) return coords[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].str();
  return s + ")";
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.coords.size() != b.coords.size()) return a.coords.size() <=> b.coords.size();
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    auto c = canonical_compare(a.coords[i], b.coords[i]);
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

LaurentFunction LaurentFunction::constant(int nvars, const Cyclo& c) {
  return monomial(nvars, Exponent(static_cast<std::size_t>(nvars), 0), c);
}

LaurentFunction LaurentFunction::variable(int nvars, int i) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e.at(static_cast<std::size_t>(i)) = 1;
  return monomial(nvars, e);
}

LaurentFunction LaurentFunction::monomial(int nvars, const Exponent& e, const Cyclo& c) {
  LaurentFunction f(nvars);
  f.add_term(e, c);
  return f;
}

Cyclo LaurentFunction::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Cyclo(0) : it->second;
}

void LaurentFunction::add_term(const Exponent& e, const Cyclo& c) {
  if (static_cast<int>(e.size()) != n_) throw Error("exponent has the wrong number of variables");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Cyclo LaurentFunction::evaluate(const Point& x) const {
  if (x.nvars() != n_) throw Error("point has the wrong number of coordinates");
  Cyclo s = 0;
  for (const auto& [e, c] : terms_) {
    Cyclo t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= x.coords[i].pow(e[i]);
    s += t;
  }
  return s;
}

LaurentFunction LaurentFunction::pow(unsigned e) const {
  LaurentFunction r = constant(n_, 1);
  LaurentFunction b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

LaurentFunction& LaurentFunction::operator+=(const LaurentFunction& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentFunction& LaurentFunction::operator-=(const LaurentFunction& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentFunction& LaurentFunction::operator*=(const Cyclo& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentFunction operator*(const LaurentFunction& a, const LaurentFunction& b) {
  if (a.n_ != b.n_) throw Error("Laurent functions in different numbers of variables");
  LaurentFunction out(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

std::string LaurentFunction::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first
  std::vector<std::pair<Exponent, Cyclo>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (int v : x.first) dx += v;
    for (int v : y.first) dy += v;
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  for (const auto& [e, c] : items) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += n_ == 1 ? "t" : "t" + std::to_string(i + 1);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff = c.str();
    const bool simple = c.is_rational();
    std::string term;
    if (mono.empty()) term = simple ? coeff : "(" + coeff + ")";
    else if (c.is_one()) term = mono;
    else if (simple && c == Cyclo(-1)) term = "-" + mono;
    else term = (simple ? coeff : "(" + coeff + ")") + "*" + mono;
    if (!first) {
      if (term[0] == '-') os << " - " << term.substr(1);
      else os << " + " << term;
    } else {
      os << term;
    }
    first = false;
  }
  return os.str();
}

JetShape::JetShape(int nvars, int order) : n_(nvars), e_(order) {
  if (nvars < 1 || order < 1) throw Error("jet shape needs positive variables and order");
  for (int d = 0; d < order; ++d) {
    std::vector<Exponent> layer;
    Exponent cur(static_cast<std::size_t>(nvars), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == cur.size()) {
        cur[i] = left;
        layer.push_back(cur);
        return;
      }
      for (int v = left; v >= 0; --v) {
        cur[i] = v;
        self(self, i + 1, left - v);
      }
    };
    rec(rec, 0, d);
    for (auto& m : layer) {
      index_[m] = monos_.size();
      monos_.push_back(m);
      deg_.push_back(d);
    }
  }
  prod_.assign(monos_.size() * monos_.size(), -1);
  for (std::size_t i = 0; i < monos_.size(); ++i)
    for (std::size_t j = 0; j < monos_.size(); ++j) {
      Exponent e = monos_[i];
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += monos_[j][k];
      prod_[i * monos_.size() + j] = index(e);
    }
}

std::shared_ptr<const JetShape> JetShape::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetShape>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::shared_ptr<const JetShape>(new JetShape(nvars, order));
  return slot;
}

long JetShape::index(const Exponent& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::string JetShape::mono_str(std::size_t i) const {
  const auto& m = monos_[i];
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k]) continue;
    if (!s.empty()) s += "*";
    s += n_ == 1 ? "u" : "u" + std::to_string(k + 1);
    if (m[k] != 1) s += "^" + std::to_string(m[k]);
  }
  return s.empty() ? "1" : s;
}

Vec jet_mul(const JetShape& s, const Vec& a, const Vec& b) {
  Vec out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (b[j].is_zero()) continue;
      const long k = s.product(i, j);
      if (k >= 0) out[static_cast<std::size_t>(k)] += a[i] * b[j];
    }
  }
  return out;
}

namespace {

// Generalized binomial coefficient binom(a, k) for integer a, k >= 0.
Rational binom(long a, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * Rational(a - i) / Rational(i + 1);
  r.canonicalize();
  return r;
}

}  // namespace

Vec jet_expand(const LaurentFunction& f, const Point& x, int e) {
  if (e < 1) throw InputError("jet order must be at least 1");
  if (x.nvars() != f.nvars()) throw Error("point and function have different numbers of variables");
  const auto shape = JetShape::get(f.nvars(), e);
  Vec out(shape->size());
  std::vector<Cyclo> inv;
  for (const auto& c : x.coords) inv.push_back(c.inv());
  for (const auto& [alpha, c] : f.terms()) {
    Cyclo base = c;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i]) base *= x.coords[i].pow(alpha[i]);
    for (std::size_t m = 0; m < shape->size(); ++m) {
      const auto& beta = shape->mono(m);
      Cyclo t = base;
      for (std::size_t i = 0; i < beta.size() && !t.is_zero(); ++i)
        if (beta[i]) t *= Cyclo(binom(alpha[i], beta[i])) * inv[i].pow(beta[i]);
      out[m] += t;
    }
  }
  return out;
}

void EtaFunction::set(const Point& x, int e) {
  if (e < 0) throw InputError("exponents must be nonnegative");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x, [](const auto& p, const Point& q) { return p.first < q; });
  if (it != entries_.end() && it->first == x) {
    if (e == 0) entries_.erase(it);
    else it->second = e;
  } else if (e > 0) {
    entries_.insert(it, {x, e});
  }
}

int EtaFunction::operator()(const Point& x) const {
  for (const auto& [p, e] : entries_)
    if (p == x) return e;
  return 0;
}

std::vector<Point> EtaFunction::support() const {
  std::vector<Point> out;
  for (const auto& [p, e] : entries_) out.push_back(p);
  return out;
}

int EtaFunction::max() const {
  int m = 0;
  for (const auto& [p, e] : entries_) m = std::max(m, e);
  return m;
}

EtaFunction EtaFunction::join(const EtaFunction& o) const {
  EtaFunction out = *this;
  for (const auto& [p, e] : o.entries_) out.set(p, std::max(e, (*this)(p)));
  return out;
}

bool EtaFunction::leq(const EtaFunction& o) const {
  for (const auto& [p, e] : entries_)
    if (e > o(p)) return false;
  return true;
}

EtaFunction EtaFunction::scaled(int k) const {
  EtaFunction out;
  for (const auto& [p, e] : entries_) out.set(p, e * k);
  return out;
}

std::string EtaFunction::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i)
    s += (i ? ", " : "") + entries_[i].first.str() + ": " + std::to_string(entries_[i].second);
  return s + "}";
}

QuotientAlgebra::QuotientAlgebra(int nvars, EtaFunction eta) : n_(nvars), eta_(std::move(eta)) {
  for (const auto& [p, e] : eta_.entries()) {
    if (p.nvars() != nvars) throw InputError("point " + p.str() + " has the wrong number of coordinates");
    shapes_.push_back(JetShape::get(nvars, e));
    offsets_.push_back(dim_);
    dim_ += shapes_.back()->size();
  }
}

Vec QuotientAlgebra::expand(const LaurentFunction& f) const {
  Vec out(dim_);
  for (std::size_t p = 0; p < shapes_.size(); ++p) {
    Vec j = jet_expand(f, eta_.entries()[p].first, shapes_[p]->order());
    std::copy(j.begin(), j.end(), out.begin() + static_cast<long>(offsets_[p]));
  }
  return out;
}

Vec QuotientAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out(dim_);
  for (std::size_t p = 0; p < shapes_.size(); ++p) {
    const auto off = static_cast<long>(offsets_[p]);
    const auto sz = static_cast<long>(shapes_[p]->size());
    Vec x(a.begin() + off, a.begin() + off + sz), y(b.begin() + off, b.begin() + off + sz);
    Vec z = jet_mul(*shapes_[p], x, y);
    std::copy(z.begin(), z.end(), out.begin() + off);
  }
  return out;
}

Matrix QuotientAlgebra::gamma_matrix(const GammaGroup& grp, std::size_t elem) const {
  Matrix m(dim_, dim_);
  const auto& s = grp.scaling(elem);
  for (std::size_t p = 0; p < shapes_.size(); ++p) {
    const Point& y = eta_.entries()[p].first;
    const Point gy = gamma_point(grp, elem, y);
    std::size_t q = shapes_.size();
    for (std::size_t r = 0; r < shapes_.size(); ++r)
      if (eta_.entries()[r].first == gy) q = r;
    if (q == shapes_.size() || eta_.entries()[q].second != eta_.entries()[p].second)
      throw InputError("truncation is not stable under the group");
    for (std::size_t k = 0; k < shapes_[p]->size(); ++k) {
      Cyclo c = 1;
      const auto& beta = shapes_[p]->mono(k);
      for (std::size_t i = 0; i < beta.size(); ++i)
        if (beta[i]) c *= s[i].pow(-beta[i]);
      m(offsets_[q] + k, offsets_[p] + k) = c;
    }
  }
  return m;
}

Subspace QuotientAlgebra::power_filtration(int k) const {
  std::vector<Vec> gens;
  for (std::size_t p = 0; p < shapes_.size(); ++p)
    for (std::size_t j = 0; j < shapes_[p]->size(); ++j)
      if (shapes_[p]->degree(j) >= k) gens.push_back(unit_vec(dim_, offsets_[p] + j));
  return Subspace::span(dim_, gens);
}

Point gamma_point(const GammaGroup& grp, std::size_t elem, const Point& x) {
  if (x.nvars() != grp.num_vars()) throw InputError("point " + x.str() + " has the wrong number of coordinates");
  Point y = x;
  const auto& s = grp.scaling(elem);
  for (std::size_t i = 0; i < y.coords.size(); ++i) y.coords[i] *= s[i];
  return y;
}

LaurentFunction gamma_act(const GammaGroup& grp, std::size_t elem, const LaurentFunction& f) {
  const auto& s = grp.scaling(elem);
  LaurentFunction out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Cyclo k = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) k *= s[i].pow(-e[i]);
    out.add_term(e, k);
  }
  return out;
}

std::vector<Point> gamma_orbit(const GammaGroup& grp, const Point& x) {
  std::vector<Point> out;
  for (std::size_t e = 0; e < grp.size(); ++e) {
    Point y = gamma_point(grp, e, x);
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  }
  return out;
}

Point orbit_representative(const GammaGroup& grp, const Point& x) {
  auto orb = gamma_orbit(grp, x);
  return *std::min_element(orb.begin(), orb.end());
}

bool same_orbit(const GammaGroup& grp, const Point& x, const Point& y) {
  for (std::size_t e = 0; e < grp.size(); ++e)
    if (gamma_point(grp, e, x) == y) return true;
  return false;
}

LaurentFunction xi_component(const GammaGroup& grp, const LaurentFunction& f, std::size_t chi) {
  LaurentFunction out(f.nvars());
  for (std::size_t e = 0; e < grp.size(); ++e) out += gamma_act(grp, e, f) * grp.character_value(chi, e).inv();
  out *= Cyclo(Rational(1, static_cast<long>(grp.size())));
  return out;
}

FreenessReport validate_free_and_Xstar(const GammaGroup& grp, const std::vector<Point>& points) {
  FreenessReport r;
  for (std::size_t e = 1; e < grp.size(); ++e) {
    bool trivial = true;
    for (const auto& s : grp.scaling(e))
      if (!s.is_one()) trivial = false;
    if (trivial) {
      r.free = false;
      r.violations.push_back("element " + grp.element_name(e) + " has trivial scaling, so the action is not free");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (same_orbit(grp, points[i], points[j])) {
        r.xstar = false;
        r.violations.push_back("points " + points[i].str() + " and " + points[j].str() + " lie in the same orbit");
      }
  return r;
}

LaurentFunction interpolate(int nvars, const std::vector<std::pair<Point, Cyclo>>& assignments) {
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i].first.nvars() != nvars) throw InputError("interpolation point has the wrong number of coordinates");
    for (std::size_t j = i + 1; j < assignments.size(); ++j)
      if (assignments[i].first == assignments[j].first)
        throw InputError("duplicate interpolation point " + assignments[i].first.str());
  }
  const std::size_t np = assignments.size();
  Vec rhs(np);
  for (std::size_t i = 0; i < np; ++i) rhs[i] = assignments[i].second;
  std::vector<Exponent> ladder;
  std::vector<Vec> columns;
  const int max_degree = static_cast<int>(np) + 1;
  for (int d = 0; d <= max_degree; ++d) {
    auto shape = JetShape::get(nvars, d + 1);
    std::vector<Exponent> layer;
    for (std::size_t k = 0; k < shape->size(); ++k)
      if (shape->degree(k) == d) layer.push_back(shape->mono(k));
    std::sort(layer.begin(), layer.end());
    for (const auto& e : layer) {
      ladder.push_back(e);
      Vec col(np);
      auto mono = LaurentFunction::monomial(nvars, e);
      for (std::size_t i = 0; i < np; ++i) col[i] = mono.evaluate(assignments[i].first);
      columns.push_back(col);
      auto sol = solve(Matrix::from_columns(columns, np), rhs);
      if (sol) {
        LaurentFunction f(nvars);
        for (std::size_t k = 0; k < ladder.size(); ++k) f.add_term(ladder[k], (*sol)[k]);
        return f;
      }
    }
  }
  throw CheckFailure("interpolation ladder exhausted");
}

}  // namespace ema
