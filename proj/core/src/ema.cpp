#include "ema/ema.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ema/error.hpp"

namespace ema {

namespace {

Cyclo scaling_power(const std::vector<Cyclo>& s, const Exponent& beta, int sign) {
  Cyclo c = 1;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i]) c *= s[i].pow(static_cast<long>(sign) * beta[i]);
  return c;
}

std::size_t element_moving(const GammaGroup& grp, const Point& from, const Point& to) {
  for (std::size_t e = 0; e < grp.size(); ++e)
    if (gamma_point(grp, e, from) == to) return e;
  throw InputError("point " + to.str() + " is not in the orbit of " + from.str());
}

}  // namespace

TruncatedAlgebra::TruncatedAlgebra(std::shared_ptr<const ChevalleyAlgebra> g, int nvars, EtaFunction eta)
    : g_(std::move(g)), nvars_(nvars), eta_(std::move(eta)) {
  const std::size_t dg = g_->dim();
  std::size_t total = 0;
  for (const auto& [p, e] : eta_.entries()) {
    if (p.nvars() != nvars_) throw InputError("point " + p.str() + " has the wrong number of coordinates");
    shapes_.push_back(JetShape::get(nvars_, e));
    offsets_.push_back(total);
    total += shapes_.back()->size() * dg;
  }
  std::vector<std::string> labels(total);
  std::vector<Sparse> table(total * total);
  for (std::size_t p = 0; p < shapes_.size(); ++p) {
    const JetShape& sh = *shapes_[p];
    for (std::size_t m = 0; m < sh.size(); ++m)
      for (std::size_t a = 0; a < dg; ++a) {
        std::string l = g_->label(a);
        if (sh.degree(m) > 0) l += "*" + sh.mono_str(m);
        labels[index(p, m, a)] = l + "@" + point(p).str();
      }
    for (std::size_t m1 = 0; m1 < sh.size(); ++m1)
      for (std::size_t m2 = 0; m2 < sh.size(); ++m2) {
        const long k = sh.product(m1, m2);
        if (k < 0) continue;
        for (std::size_t a = 0; a < dg; ++a)
          for (std::size_t b = 0; b < dg; ++b) {
            Sparse& out = table[index(p, m1, a) * total + index(p, m2, b)];
            for (const auto& t : g_->bracket_basis(a, b)) out.push_back({index(p, static_cast<std::size_t>(k), t.index), t.coeff});
          }
      }
  }
  set_structure("trunc(" + g_->key() + ";n" + std::to_string(nvars_) + ";" + eta_.str() + ")", std::move(labels),
                std::move(table));
}

std::shared_ptr<const TruncatedAlgebra> TruncatedAlgebra::build(std::shared_ptr<const ChevalleyAlgebra> g, int nvars,
                                                                const EtaFunction& eta) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const TruncatedAlgebra>> cache;
  const std::string key = g->key() + "|" + std::to_string(nvars) + "|" + eta.str();
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const TruncatedAlgebra> t(new TruncatedAlgebra(std::move(g), nvars, eta));
  cache.emplace(key, t);
  return t;
}

long TruncatedAlgebra::point_index(const Point& x) const {
  const auto& e = eta_.entries();
  auto it = std::lower_bound(e.begin(), e.end(), x, [](const auto& entry, const Point& y) { return entry.first < y; });
  if (it == e.end() || it->first != x) return -1;
  return it - e.begin();
}

TruncatedAlgebra::Coord TruncatedAlgebra::coord(std::size_t i) const {
  if (i >= dim()) throw Error("basis index out of range");
  const std::size_t p = static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), i) - offsets_.begin()) - 1;
  const std::size_t r = i - offsets_[p];
  return {p, r / g_->dim(), r % g_->dim()};
}

Vec TruncatedAlgebra::element(const Vec& a, const LaurentFunction& f) const {
  if (a.size() != g_->dim()) throw Error("g element has the wrong length");
  Vec out(dim());
  for (std::size_t p = 0; p < num_points(); ++p) {
    const Vec jet = jet_expand(f, point(p), exponent(p));
    for (std::size_t m = 0; m < jet.size(); ++m) {
      if (jet[m].is_zero()) continue;
      for (std::size_t k = 0; k < a.size(); ++k)
        if (!a[k].is_zero()) out[index(p, m, k)] = a[k] * jet[m];
    }
  }
  return out;
}

Matrix TruncatedAlgebra::projection_to(const TruncatedAlgebra& smaller) const {
  if (smaller.g_->key() != g_->key() || smaller.nvars_ != nvars_) throw InputError("projection between unrelated truncations");
  Matrix m(smaller.dim(), dim());
  for (std::size_t q = 0; q < smaller.num_points(); ++q) {
    const long p = point_index(smaller.point(q));
    if (p < 0 || exponent(static_cast<std::size_t>(p)) < smaller.exponent(q))
      throw InputError("truncation " + smaller.eta_.str() + " is not below " + eta_.str());
    const JetShape& sh = smaller.shape(q);
    for (std::size_t j = 0; j < sh.size(); ++j) {
      const auto big = static_cast<std::size_t>(shape(static_cast<std::size_t>(p)).index(sh.mono(j)));
      for (std::size_t k = 0; k < g_->dim(); ++k) m(smaller.index(q, j, k), index(static_cast<std::size_t>(p), big, k)) = 1;
    }
  }
  return m;
}

Matrix TruncatedAlgebra::gamma_matrix(const GammaGroup& grp, std::size_t elem) const {
  if (grp.g().key() != g_->key()) throw InputError("group acts on a different Lie algebra");
  Matrix m(dim(), dim());
  const Matrix& sigma = grp.sigma(elem);
  const auto& s = grp.scaling(elem);
  const std::size_t dg = g_->dim();
  for (std::size_t p = 0; p < num_points(); ++p) {
    const long q = point_index(gamma_point(grp, elem, point(p)));
    if (q < 0 || exponent(static_cast<std::size_t>(q)) != exponent(p)) throw InputError("truncation is not stable under the group");
    for (std::size_t j = 0; j < shape(p).size(); ++j) {
      const Cyclo c = scaling_power(s, shape(p).mono(j), -1);
      for (std::size_t a = 0; a < dg; ++a)
        for (std::size_t b = 0; b < dg; ++b)
          if (!sigma(b, a).is_zero()) m(index(static_cast<std::size_t>(q), j, b), index(p, j, a)) = c * sigma(b, a);
    }
  }
  return m;
}

Subspace TruncatedAlgebra::filtration(const std::vector<int>& min_degree) const {
  if (min_degree.size() != num_points()) throw Error("filtration needs one degree per point");
  std::vector<Vec> gens;
  for (std::size_t p = 0; p < num_points(); ++p)
    for (std::size_t j = 0; j < shape(p).size(); ++j)
      if (shape(p).degree(j) >= min_degree[p])
        for (std::size_t k = 0; k < g_->dim(); ++k) gens.push_back(unit_vec(dim(), index(p, j, k)));
  return Subspace::span(dim(), gens);
}

std::shared_ptr<const InvariantAlgebra> InvariantAlgebra::build(std::shared_ptr<const GammaGroup> grp, const EtaFunction& eta) {
  EtaFunction reps;
  for (const auto& [x, e] : eta.entries()) {
    const Point r = orbit_representative(*grp, x);
    if (reps(r) != 0 && reps(r) != e) throw InputError("different exponents given on the orbit of " + x.str());
    reps.set(r, e);
  }
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const InvariantAlgebra>> cache;
  const std::string key = "inv(" + grp->key() + ";" + reps.str() + ")";
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<InvariantAlgebra> inv(new InvariantAlgebra());
  inv->grp_ = grp;
  inv->reps_ = reps;
  EtaFunction full;
  for (const auto& [r, e] : reps.entries())
    for (const auto& y : gamma_orbit(*grp, r)) full.set(y, e);
  inv->orbit_ = TruncatedAlgebra::build(grp->g_ptr(), grp->num_vars(), full);
  const TruncatedAlgebra& O = *inv->orbit_;
  const auto& ghom = grp->g_homogeneous_basis();
  const std::size_t dg = grp->g().dim();

  std::vector<Vec> gcols;
  for (const auto& [chi, v] : ghom) gcols.push_back(v);
  auto gi = inverse(Matrix::from_columns(gcols, dg));
  if (!gi) throw CheckFailure("homogeneous basis of g is singular");
  inv->ginv_ = *gi;

  std::vector<std::string> labels;
  std::vector<Vec> cols;
  for (std::size_t ri = 0; ri < reps.size(); ++ri) {
    const Point& r = reps.entries()[ri].first;
    inv->rep_index_.push_back(static_cast<std::size_t>(O.point_index(r)));
    const JetShape& sh = O.shape(inv->rep_index_.back());
    for (std::size_t m = 0; m < sh.size(); ++m)
      for (std::size_t a = 0; a < ghom.size(); ++a) {
        Vec col(O.dim());
        for (std::size_t e = 0; e < grp->size(); ++e) {
          const auto q = static_cast<std::size_t>(O.point_index(gamma_point(*grp, e, r)));
          const Cyclo c = scaling_power(grp->scaling(e), sh.mono(m), -1);
          const Vec sv = grp->sigma(e).apply(ghom[a].second);
          for (std::size_t k = 0; k < dg; ++k)
            if (!sv[k].is_zero()) col[O.index(q, m, k)] += c * sv[k];
        }
        cols.push_back(std::move(col));
        inv->coords_.push_back({ri, m, a});
        inv->labels_xi_.push_back(ghom[a].first);
        std::string l = "v" + std::to_string(a + 1) + grp->character_name(ghom[a].first);
        if (sh.degree(m) > 0) l += "*" + sh.mono_str(m);
        labels.push_back(l + "@" + r.str());
      }
  }
  const std::size_t n = cols.size();
  if (n * grp->size() != O.dim()) throw CheckFailure("invariant dimension does not match the orbit count");
  inv->incl_ = Matrix::from_columns(cols, O.dim());

  // [v_a, v_b] in homogeneous coordinates
  std::vector<Sparse> gb(dg * dg);
  for (std::size_t a = 0; a < dg; ++a)
    for (std::size_t b = 0; b < dg; ++b) gb[a * dg + b] = to_sparse(inv->ginv_.apply(grp->g().bracket(ghom[a].second, ghom[b].second)));
  std::vector<std::size_t> block_start;
  for (std::size_t i = 0; i < n; ++i)
    if (inv->coords_[i].mono == 0 && inv->coords_[i].gb == 0) block_start.push_back(i);
  std::vector<Sparse> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ci = inv->coords_[i];
      const auto& cj = inv->coords_[j];
      if (ci.point != cj.point) continue;
      const long k = O.shape(inv->rep_index_[ci.point]).product(ci.mono, cj.mono);
      if (k < 0) continue;
      Sparse& out = table[i * n + j];
      for (const auto& t : gb[ci.gb * dg + cj.gb])
        out.push_back({block_start[ci.point] + static_cast<std::size_t>(k) * dg + t.index, t.coeff});
    }
  inv->set_structure(key, std::move(labels), std::move(table));
  std::lock_guard lock(mu);
  return cache.emplace(key, inv).first->second;
}

int InvariantAlgebra::exponent_of(const Point& x) const { return reps_(orbit_representative(*grp_, x)); }

Vec InvariantAlgebra::coordinates(const Vec& x) const {
  const TruncatedAlgebra& O = *orbit_;
  if (x.size() != O.dim()) throw Error("orbit element has the wrong length");
  const std::size_t dg = grp_->g().dim();
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); i += dg) {
    const auto& c = coords_[i];
    const std::size_t p = rep_index_[c.point];
    Vec local(dg);
    for (std::size_t k = 0; k < dg; ++k) local[k] = x[O.index(p, c.mono, k)];
    const Vec h = ginv_.apply(local);
    std::copy(h.begin(), h.end(), out.begin() + static_cast<long>(i));
  }
  return out;
}

std::vector<Point> InvariantAlgebra::complete_transversal(const std::vector<Point>& partial) const {
  std::vector<Point> out;
  for (const auto& [r, e] : reps_.entries()) out.push_back(r);
  std::vector<bool> used(out.size(), false);
  for (const auto& x : partial) {
    const Point r = orbit_representative(*grp_, x);
    const long i = std::find(out.begin(), out.end(), r) - out.begin();
    if (i == static_cast<long>(out.size())) throw InputError("point " + x.str() + " lies outside the orbits of the algebra");
    if (used[static_cast<std::size_t>(i)]) throw InputError("transversal meets the orbit of " + x.str() + " twice");
    used[static_cast<std::size_t>(i)] = true;
    out[static_cast<std::size_t>(i)] = x;
  }
  return out;
}

EtaFunction InvariantAlgebra::exponents_at(const std::vector<Point>& transversal) const {
  EtaFunction eta;
  for (const auto& x : transversal) {
    const int e = exponent_of(x);
    if (e == 0) throw InputError("point " + x.str() + " lies outside the orbits of the algebra");
    eta.set(x, e);
  }
  return eta;
}

Subspace InvariantAlgebra::invariant_part(const Subspace& orbit_subspace) const {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(incl_.column(j));
  const Subspace image = Subspace::span(orbit_->dim(), cols);
  const Subspace meet = image.intersect(orbit_subspace);
  std::vector<Vec> gens;
  for (const auto& v : meet.basis()) gens.push_back(coordinates(v));
  return Subspace::span(dim(), gens);
}

Matrix InvariantAlgebra::projection_to(const InvariantAlgebra& smaller) const {
  if (smaller.grp_->key() != grp_->key()) throw InputError("projection between algebras of different groups");
  const Matrix p = orbit_->projection_to(*smaller.orbit_);
  Matrix out(smaller.dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vec c = smaller.coordinates(p.apply(incl_.column(j)));
    for (std::size_t i = 0; i < c.size(); ++i) out(i, j) = c[i];
  }
  return out;
}

EvIso ev_iso(const std::shared_ptr<const InvariantAlgebra>& inv, const std::vector<Point>& transversal) {
  EvIso r;
  r.source = inv;
  r.transversal = inv->complete_transversal(transversal);
  const GammaGroup& grp = inv->group();
  const TruncatedAlgebra& O = inv->orbit_truncation();
  r.target = TruncatedAlgebra::build(grp.g_ptr(), grp.num_vars(), inv->exponents_at(r.transversal));
  const TruncatedAlgebra& T = *r.target;
  r.ev = Matrix(T.dim(), inv->dim());
  for (std::size_t q = 0; q < T.num_points(); ++q) {
    const auto p = static_cast<std::size_t>(O.point_index(T.point(q)));
    for (std::size_t m = 0; m < T.shape(q).size(); ++m)
      for (std::size_t k = 0; k < grp.g().dim(); ++k) {
        const std::size_t row = O.index(p, m, k);
        for (std::size_t j = 0; j < inv->dim(); ++j) r.ev(T.index(q, m, k), j) = inv->inclusion()(row, j);
      }
  }
  // Inverse: move each component back to its representative.
  const std::size_t dg = grp.g().dim();
  r.inverse = Matrix(inv->dim(), T.dim());
  for (std::size_t q = 0; q < T.num_points(); ++q) {
    const Point rep = orbit_representative(grp, T.point(q));
    const std::size_t e = element_moving(grp, rep, T.point(q));
    const Matrix& sinv = grp.sigma_inverse(e);
    for (std::size_t m = 0; m < T.shape(q).size(); ++m) {
      const Cyclo c = scaling_power(grp.scaling(e), T.shape(q).mono(m), 1);
      for (std::size_t k = 0; k < dg; ++k) {
        Vec local(O.dim());
        const auto p = static_cast<std::size_t>(O.point_index(rep));
        for (std::size_t a = 0; a < dg; ++a)
          if (!sinv(a, k).is_zero()) local[O.index(p, m, a)] = c * sinv(a, k);
        const Vec col = inv->coordinates(local);
        for (std::size_t i = 0; i < col.size(); ++i) r.inverse(i, T.index(q, m, k)) = col[i];
      }
    }
  }
  return r;
}

EvIso ev_gamma_iso(const std::shared_ptr<const GammaGroup>& grp, const EtaFunction& eta, bool verify) {
  const auto rep = validate_free_and_Xstar(*grp, eta.support());
  if (!rep.ok()) throw InputError(rep.violations.front());
  auto inv = InvariantAlgebra::build(grp, eta);
  EvIso r = ev_iso(inv, eta.support());
  if (verify) {
    const std::size_t n = inv->dim();
    if (!(r.ev * r.inverse == Matrix::identity(r.target->dim())) || !(r.inverse * r.ev == Matrix::identity(n)))
      throw CheckFailure("evaluation map is not invertible");
    std::vector<Vec> images;
    for (std::size_t j = 0; j < n; ++j) images.push_back(r.ev.column(j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec lhs = r.ev.apply(to_dense(inv->bracket_basis(i, j), n));
        if (lhs != r.target->bracket(images[i], images[j]))
          throw CheckFailure("evaluation map does not preserve the bracket of " + inv->label(i) + " and " + inv->label(j));
      }
  }
  return r;
}

LiftResult constructive_lift(const GammaGroup& grp, const Vec& a, const LaurentFunction& f, const Point& x,
                             const EtaFunction& eta, int field_order) {
  if (eta(x) == 0) throw InputError("lift point " + x.str() + " is not in the support of eta");
  const auto fr = validate_free_and_Xstar(grp, eta.support());
  if (!fr.ok()) throw InputError(fr.violations.front());
  const int n = eta.max();
  if (field_order % (2 * n) != 0)
    throw InputError("lift needs the cyclotomic order to be divisible by " + std::to_string(2 * n));
  const int nv = grp.num_vars();
  LiftResult r;
  r.n = n;
  r.xi = Cyclo::zeta(2 * n);
  std::vector<std::pair<Point, int>> others;  // points of the other support orbits with their exponents
  std::vector<std::pair<Point, Cyclo>> assign{{x, Cyclo(0)}};
  for (const auto& [p, e] : eta.entries())
    for (const auto& y : gamma_orbit(grp, p)) {
      if (y == x) continue;
      if (p != x) others.emplace_back(y, e);
      assign.emplace_back(y, r.xi);
    }
  r.f1 = interpolate(nv, assign);
  const LaurentFunction one = LaurentFunction::constant(nv, Cyclo(1));
  r.f2 = f * (one + r.f1.pow(static_cast<unsigned>(n))).pow(static_cast<unsigned>(n));

  const std::size_t dg = grp.g().dim();
  r.components.assign(dg, LaurentFunction(nv));
  for (std::size_t e = 0; e < grp.size(); ++e) {
    const Vec sa = grp.sigma(e).apply(a);
    const LaurentFunction moved = gamma_act(grp, e, r.f2);
    for (std::size_t k = 0; k < dg; ++k)
      if (!sa[k].is_zero()) r.components[k] += moved * sa[k];
  }

  r.invariant = true;
  for (std::size_t e = 0; e < grp.size() && r.invariant; ++e) {
    std::vector<LaurentFunction> moved;
    for (const auto& c : r.components) moved.push_back(gamma_act(grp, e, c));
    const Matrix& s = grp.sigma(e);
    for (std::size_t j = 0; j < dg && r.invariant; ++j) {
      LaurentFunction acc(nv);
      for (std::size_t k = 0; k < dg; ++k)
        if (!s(j, k).is_zero()) acc += moved[k] * s(j, k);
      if (!(acc == r.components[j])) r.invariant = false;
    }
  }
  const int ex = eta(x);
  const Vec fj = jet_expand(f, x, ex);
  r.matches_at_x = true;
  for (std::size_t k = 0; k < dg; ++k)
    if (jet_expand(r.components[k], x, ex) != scaled(fj, a[k])) r.matches_at_x = false;
  r.vanishes_elsewhere = true;
  for (const auto& [y, e] : others)
    for (std::size_t k = 0; k < dg; ++k)
      if (!is_zero(jet_expand(r.components[k], y, e))) r.vanishes_elsewhere = false;
  return r;
}

bool power_ideal_check(const std::shared_ptr<const GammaGroup>& grp, const std::vector<Point>& points, int kappa, int m,
                       int ambient_exponent) {
  if (kappa < 1 || m < 1) throw InputError("power ideal check needs positive kappa and m");
  if (ambient_exponent <= m * kappa)
    throw InputError("ambient exponent " + std::to_string(ambient_exponent) + " must exceed m*kappa = " + std::to_string(m * kappa));
  EtaFunction eta;
  for (const auto& p : points) eta.set(orbit_representative(*grp, p), ambient_exponent);
  auto inv = InvariantAlgebra::build(grp, eta);
  const TruncatedAlgebra& O = inv->orbit_truncation();
  auto lift = [&](const Subspace& s) {
    std::vector<Vec> out;
    for (const auto& v : s.basis()) out.push_back(inv->embed(v));
    return out;
  };
  const std::vector<Vec> l1 = lift(inv->invariant_part(O.filtration(std::vector<int>(O.num_points(), kappa))));
  std::vector<Vec> lj = l1;
  for (int j = 1; j < m; ++j) {
    Eliminator next(O.dim());
    for (const auto& x : l1)
      for (const auto& y : lj) next.insert(O.bracket(x, y));
    lj = next.subspace().basis();
  }
  const Subspace lhs = Subspace::span(O.dim(), lj);
  const Subspace rhs = Subspace::span(O.dim(), lift(inv->invariant_part(O.filtration(std::vector<int>(O.num_points(), m * kappa)))));
  return lhs == rhs;
}

bool ideal_equality_check(const std::shared_ptr<const GammaGroup>& grp, const EtaFunction& eta, int ambient_exponent) {
  if (ambient_exponent <= eta.max()) throw InputError("ambient exponent must exceed max eta");
  const auto fr = validate_free_and_Xstar(*grp, eta.support());
  if (!fr.ok()) throw InputError(fr.violations.front());
  EtaFunction amb;
  for (const auto& p : eta.support()) amb.set(p, ambient_exponent);
  auto inv = InvariantAlgebra::build(grp, amb);
  const TruncatedAlgebra& O = inv->orbit_truncation();
  std::vector<int> only_x(O.num_points(), 0), whole_orbit(O.num_points(), 0);
  for (std::size_t p = 0; p < O.num_points(); ++p) only_x[p] = eta(O.point(p));
  for (const auto& [x, e] : eta.entries())
    for (const auto& y : gamma_orbit(*grp, x)) whole_orbit[static_cast<std::size_t>(O.point_index(y))] = e;
  return inv->invariant_part(O.filtration(only_x)) == inv->invariant_part(O.filtration(whole_orbit));
}

}  // namespace ema
