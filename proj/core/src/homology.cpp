#include "ema/homology.hpp"

#include <algorithm>

#include "ema/error.hpp"

namespace ema {

namespace {

std::shared_ptr<const TruncatedAlgebra> as_trunc(const std::shared_ptr<const LieAlgebra>& a) {
  return std::dynamic_pointer_cast<const TruncatedAlgebra>(a);
}
std::shared_ptr<const InvariantAlgebra> as_inv(const std::shared_ptr<const LieAlgebra>& a) {
  return std::dynamic_pointer_cast<const InvariantAlgebra>(a);
}

std::size_t pair_index(std::size_t x, std::size_t y, std::size_t n) {
  // position of (x, y), x < y, in lexicographic order
  return x * n - x * (x + 1) / 2 + (y - x - 1);
}

}  // namespace

CEComplex::CEComplex(FiniteModule v) : v_(std::move(v)), d0_(dim_c1(), dim_c0()) {
  const std::size_t dv = v_.dim();
  for (std::size_t x = 0; x < algebra().dim(); ++x) {
    const Matrix& r = v_.action(x);
    for (std::size_t i = 0; i < dv; ++i)
      for (std::size_t j = 0; j < dv; ++j) d0_(x * dv + i, j) = r(i, j);
  }
}

std::size_t CEComplex::dim_c2() const {
  const std::size_t n = algebra().dim();
  return n * (n ? n - 1 : 0) / 2 * v_.dim();
}

Vec CEComplex::d1(const Vec& c) const {
  if (c.size() != dim_c1()) throw InputError("cochain has the wrong size");
  const std::size_t n = algebra().dim(), dv = v_.dim();
  Vec out(dim_c2());
  auto block = [&](std::size_t x) { return Vec(c.begin() + static_cast<long>(x * dv), c.begin() + static_cast<long>((x + 1) * dv)); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      Vec r = v_.action(x).apply(block(y));
      const Vec s = v_.action(y).apply(block(x));
      for (std::size_t i = 0; i < dv; ++i) r[i] -= s[i];
      for (const auto& t : algebra().bracket_basis(x, y))
        for (std::size_t i = 0; i < dv; ++i) r[i] -= t.coeff * c[t.index * dv + i];
      const std::size_t off = pair_index(x, y, n) * dv;
      for (std::size_t i = 0; i < dv; ++i) out[off + i] = std::move(r[i]);
    }
  return out;
}

Vec CEComplex::d1_row(std::size_t x, std::size_t y, std::size_t i) const {
  const std::size_t dv = v_.dim();
  Vec row(dim_c1());
  const Matrix& rx = v_.action(x);
  const Matrix& ry = v_.action(y);
  for (std::size_t j = 0; j < dv; ++j) {
    if (!rx(i, j).is_zero()) row[y * dv + j] += rx(i, j);
    if (!ry(i, j).is_zero()) row[x * dv + j] -= ry(i, j);
  }
  for (const auto& t : algebra().bracket_basis(x, y)) row[t.index * dv + i] -= t.coeff;
  return row;
}

Matrix CEComplex::d1_matrix() const {
  const std::size_t n = algebra().dim(), dv = v_.dim();
  Matrix m(dim_c2(), dim_c1());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t i = 0; i < dv; ++i) {
        const Vec r = d1_row(x, y, i);
        const std::size_t row = pair_index(x, y, n) * dv + i;
        for (std::size_t j = 0; j < r.size(); ++j) m(row, j) = r[j];
      }
  return m;
}

bool CEComplex::check() const {
  for (std::size_t k = 0; k < dim_c0(); ++k)
    if (!is_zero(d1(d0_.column(k)))) return false;
  return true;
}

H1Result h1(const FiniteModule& v) {
  const CEComplex c(v);
  if (!c.check()) throw CheckFailure("d1 d0 != 0 for coefficients over " + v.algebra().key());
  const std::size_t n = c.algebra().dim(), dv = v.dim();
  const Subspace cocycles = nullspace_of_rows(c.dim_c1(), [&](const std::function<bool(Vec)>& emit) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        const bool quiet = v.action(x).is_zero() && v.action(y).is_zero() && c.algebra().bracket_basis(x, y).empty();
        if (quiet) continue;
        for (std::size_t i = 0; i < dv; ++i) {
          Vec r = c.d1_row(x, y, i);
          if (is_zero(r)) continue;
          if (!emit(std::move(r))) return;
        }
      }
  });
  Eliminator e(c.dim_c1());
  for (std::size_t k = 0; k < c.dim_c0(); ++k) e.insert(c.d0().column(k));
  H1Result out;
  out.dim_cocycles = cocycles.dim();
  out.dim_coboundaries = e.rank();
  for (const auto& z : cocycles.basis())
    if (e.insert(z)) out.cocycles.push_back(z);
  out.dim = out.cocycles.size();
  if (out.dim + out.dim_coboundaries != out.dim_cocycles) throw CheckFailure("coboundaries are not cocycles");
  return out;
}

H1Result ext1(const FiniteModule& m, const FiniteModule& n) { return h1(hom_module(m, n)); }

std::vector<std::size_t> ExtLadder::dims() const {
  std::vector<std::size_t> d;
  for (const auto& r : rungs) d.push_back(r.dim);
  return d;
}

ExtLadder ext1_ladder(const FiniteModule& m, const FiniteModule& n, int rungs, std::optional<int> base) {
  if (rungs < 1) throw InputError("ext ladder needs at least one rung");
  const int b = base ? *base : 2 * std::max({annihilator_exponent(m), annihilator_exponent(n), 1});
  if (b < 1) throw InputError("ext ladder base exponent must be positive");
  auto tm = as_trunc(m.algebra_ptr()), tn = as_trunc(n.algebra_ptr());
  auto im = as_inv(m.algebra_ptr()), in = as_inv(n.algebra_ptr());
  std::vector<Point> pts;
  if (tm && tn) {
    if (!(tm->g().key() == tn->g().key()) || tm->nvars() != tn->nvars()) throw InputError("ext ladder modules live over different families");
    for (const auto& x : tm->eta().support()) pts.push_back(x);
    for (const auto& x : tn->eta().support()) pts.push_back(x);
  } else if (im && in) {
    if (im->group().key() != in->group().key()) throw InputError("ext ladder modules live over different groups");
    for (const auto& x : im->orbit_exponents().support()) pts.push_back(x);
    for (const auto& x : in->orbit_exponents().support()) pts.push_back(x);
  } else {
    throw InputError("ext ladder needs two modules over truncated algebras or two over invariant algebras");
  }
  ExtLadder out;
  for (int i = 0; i < rungs; ++i) {
    EtaFunction eta;
    for (const auto& x : pts) eta.set(x, b + i);
    std::shared_ptr<const LieAlgebra> alg;
    if (tm) alg = TruncatedAlgebra::build(tm->g_ptr(), tm->nvars(), eta);
    else alg = InvariantAlgebra::build(im->group_ptr(), eta);
    const H1Result h = ext1(change_truncation(m, alg), change_truncation(n, alg));
    out.rungs.push_back({b + i, alg->dim(), h.dim});
  }
  for (std::size_t i = 1; i < out.rungs.size(); ++i)
    if (out.rungs[i].dim < out.rungs[i - 1].dim) out.monotone = false;
  out.stabilized = out.rungs.size() >= 2 && out.rungs.back().dim == out.rungs[out.rungs.size() - 2].dim;
  return out;
}

bool BatteryEntry::vanishes() const {
  if (hom_dim) return false;
  return std::all_of(ladder.rungs.begin(), ladder.rungs.end(), [](const ExtRung& r) { return r.dim == 0; });
}

FiniteModule irreducible_like(const FiniteModule& like, const PsiFunction& phi) {
  if (auto t = as_trunc(like.algebra_ptr())) return evaluation_module(phi, TruncatedAlgebra::build(t->g_ptr(), t->nvars(), eta_on_support(phi, 1)));
  if (auto inv = as_inv(like.algebra_ptr())) return evaluation_module(phi, InvariantAlgebra::build(inv->group_ptr(), eta_on_support(phi, 1)));
  throw InputError("irreducible modules need a truncated or invariant algebra family");
}

std::vector<PsiFunction> window_candidates(const FiniteModule& m, int bound) {
  if (bound < 0) throw InputError("candidate window needs a non-negative bound");
  auto inv = as_inv(m.algebra_ptr());
  auto trunc = as_trunc(m.algebra_ptr());
  if (!inv && !trunc) throw InputError("candidates need a truncated or invariant algebra family");
  const int rank = inv ? inv->group().g().rank() : trunc->g().rank();
  const std::vector<Point> pts = support(m);

  // all dominant weights with coordinates in [0, bound]
  std::vector<Weight> weights;
  std::vector<int> c(static_cast<std::size_t>(rank), 0);
  while (true) {
    weights.emplace_back(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  std::vector<PsiFunction> out;
  std::vector<std::size_t> pick(pts.size(), 0);
  while (true) {
    PsiFunction phi;
    for (std::size_t k = 0; k < pts.size(); ++k) phi.set(pts[k], weights[pick[k]]);
    if (inv) {
      phi = psi_gamma(inv->group(), phi);
      phi.equivariant = true;
    }
    out.push_back(phi);
    std::size_t k = 0;
    while (k < pick.size() && pick[k] + 1 == weights.size()) pick[k++] = 0;
    if (k == pick.size()) break;
    ++pick[k];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PsiFunction> lower_candidates(const FiniteModule& m, const PsiFunction& psi, int bound) {
  auto inv = as_inv(m.algebra_ptr());
  auto height = [&](const PsiFunction& f) {
    return inv ? height_psi(inv->group(), f) : height_psi(as_trunc(m.algebra_ptr())->g().root_datum(), f);
  };
  const Rational top = height(psi);
  std::vector<PsiFunction> out;
  for (auto& phi : window_candidates(m, bound))
    if (height(phi) < top) out.push_back(std::move(phi));
  return out;
}

BatteryReport characterization_battery(const FiniteModule& m, const PsiFunction& psi, int bound, int rungs) {
  if (!is_maximal_weight(m, psi)) throw InputError("module is not maximal weight of maximal weight " + psi.str());
  BatteryReport rep;
  rep.psi = psi;
  auto inv = as_inv(m.algebra_ptr());
  if (bound < 0) {
    bound = 0;
    for (const auto& [x, w] : psi.entries())
      for (int v : w.coords) bound = std::max(bound, v);
  }
  rep.bound = bound;
  rep.rungs = rungs;
  rep.height = inv ? height_psi(inv->group(), psi) : height_psi(as_trunc(m.algebra_ptr())->g().root_datum(), psi);
  rep.pass = true;
  for (const auto& phi : lower_candidates(m, psi, bound)) {
    BatteryEntry e;
    e.phi = phi;
    e.height = inv ? height_psi(inv->group(), phi) : height_psi(as_trunc(m.algebra_ptr())->g().root_datum(), phi);
    const FiniteModule v = irreducible_like(m, phi);
    const auto j = join_algebras(m.algebra(), v.algebra());
    e.hom_dim = hom_space(change_truncation(m, j), change_truncation(v, j)).dim();
    e.ladder = ext1_ladder(m, v, rungs);
    if (!e.vanishes()) rep.pass = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace ema
