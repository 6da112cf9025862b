#include "ema/repmod.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ema/error.hpp"
#include "ema/liealg.hpp"

namespace ema {

namespace {

std::shared_ptr<const TruncatedAlgebra> as_trunc(const std::shared_ptr<const LieAlgebra>& a) {
  return std::dynamic_pointer_cast<const TruncatedAlgebra>(a);
}

std::shared_ptr<const InvariantAlgebra> as_inv(const std::shared_ptr<const LieAlgebra>& a) {
  return std::dynamic_pointer_cast<const InvariantAlgebra>(a);
}

long integer_value(const Cyclo& c, const char* what) {
  if (!c.is_rational() || c.rational().get_den() != 1) throw CheckFailure(std::string(what) + " is not an integer");
  return c.rational().get_num().get_si();
}

// U_x over the full transversal completed by representatives.
FiniteModule untwist_full(const FiniteModule& m, const std::vector<Point>& transversal) {
  auto inv = as_inv(m.algebra_ptr());
  if (!inv) throw InputError("untwisting needs a module over an invariant algebra");
  const EvIso ev = ev_iso(inv, transversal);
  return pull_back(m, ev.target, ev.inverse);
}

const RootDatum& root_datum_of(const LieAlgebra& a) {
  if (auto* t = dynamic_cast<const TruncatedAlgebra*>(&a)) return t->g().root_datum();
  if (auto* i = dynamic_cast<const InvariantAlgebra*>(&a)) return i->group().g().root_datum();
  throw InputError("algebra " + a.key() + " is not a truncation");
}

}  // namespace

void PsiFunction::set(const Point& x, const Weight& w) {
  if (!w.is_dominant()) throw InputError("weight " + w.str() + " at " + x.str() + " is not dominant");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x, [](const auto& e, const Point& y) { return e.first < y; });
  const bool present = it != entries_.end() && it->first == x;
  if (w.is_zero()) {
    if (present) entries_.erase(it);
    return;
  }
  if (!entries_.empty() && entries_.front().second.rank() != w.rank()) throw InputError("weights of different ranks in one function");
  if (present) it->second = w;
  else entries_.insert(it, {x, w});
}

Weight PsiFunction::at(const Point& x, int rank) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), x, [](const auto& e, const Point& y) { return e.first < y; });
  if (it != entries_.end() && it->first == x) return it->second;
  return Weight::zero(rank);
}

std::vector<Point> PsiFunction::support() const {
  std::vector<Point> out;
  for (const auto& [x, w] : entries_) out.push_back(x);
  return out;
}

Weight PsiFunction::total(int rank) const {
  Weight t = Weight::zero(rank);
  for (const auto& [x, w] : entries_) t += w;
  return t;
}

std::string PsiFunction::str() const {
  if (entries_.empty()) return "0";
  std::string s = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) s += (i ? ", " : "") + entries_[i].first.str() + ": " + entries_[i].second.str();
  return s + "}";
}

bool is_equivariant(const GammaGroup& grp, const PsiFunction& psi) {
  const int rank = grp.g().rank();
  for (const auto& [x, w] : psi.entries())
    for (std::size_t e = 0; e < grp.size(); ++e)
      if (psi.at(gamma_point(grp, e, x), rank) != grp.out_part(e).act(w)) return false;
  return true;
}

PsiFunction psi_gamma(const GammaGroup& grp, const PsiFunction& psi) {
  const auto fr = validate_free_and_Xstar(grp, psi.support());
  if (!fr.ok()) throw InputError(fr.violations.front());
  PsiFunction out;
  for (const auto& [x, w] : psi.entries())
    for (std::size_t e = 0; e < grp.size(); ++e) out.set(gamma_point(grp, e, x), grp.out_part(e).act(w));
  out.equivariant = true;
  return out;
}

PsiFunction psi_restrict(const GammaGroup& grp, const PsiFunction& psi, const std::vector<Point>& transversal) {
  const auto fr = validate_free_and_Xstar(grp, transversal);
  if (!fr.xstar) throw InputError("invalid transversal: " + fr.violations.front());
  const int rank = grp.g().rank();
  for (const auto& r : canonical_transversal(grp, psi)) {
    const bool met = std::any_of(transversal.begin(), transversal.end(), [&](const Point& x) { return same_orbit(grp, x, r); });
    if (!met) throw InputError("invalid transversal: the orbit of " + r.str() + " is missed");
  }
  PsiFunction out;
  for (const auto& x : transversal) out.set(x, psi.at(x, rank));
  return out;
}

std::vector<Point> canonical_transversal(const GammaGroup& grp, const PsiFunction& psi) {
  std::set<Point> reps;
  for (const auto& x : psi.support()) reps.insert(orbit_representative(grp, x));
  return {reps.begin(), reps.end()};
}

Rational height_psi(const RootDatum& rd, const PsiFunction& psi) {
  Rational h = 0;
  for (const auto& [x, w] : psi.entries()) h += rd.height(w);
  return h;
}

Rational height_psi(const GammaGroup& grp, const PsiFunction& psi) {
  const RootDatum& rd = grp.g().root_datum();
  Rational h = 0;
  for (const auto& r : canonical_transversal(grp, psi)) h += rd.height(psi.at(r, rd.rank()));
  return h;
}

EtaFunction eta_on_support(const PsiFunction& psi, int e) {
  EtaFunction eta;
  for (const auto& x : psi.support()) eta.set(x, e);
  return eta;
}

FiniteModule evaluation_module(const PsiFunction& psi, const std::shared_ptr<const TruncatedAlgebra>& target) {
  const TruncatedAlgebra& T = *target;
  std::vector<FiniteModule> factors;
  std::vector<std::size_t> points;
  for (const auto& [x, w] : psi.entries()) {
    const long p = T.point_index(x);
    if (p < 0) throw InputError("support point " + x.str() + " is not covered by the truncation");
    points.push_back(static_cast<std::size_t>(p));
    factors.push_back(irreducible_module(T.g_ptr(), w));
  }
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.dim();
  std::vector<Matrix> act(T.dim(), Matrix(total, total));
  std::size_t before = 1;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const std::size_t after = total / (before * factors[f].dim());
    const Matrix ib = Matrix::identity(before), ia = Matrix::identity(after);
    for (std::size_t k = 0; k < T.g().dim(); ++k) act[T.index(points[f], 0, k)] = kron(kron(ib, factors[f].action(k)), ia);
    before *= factors[f].dim();
  }
  FiniteModule out(target, total, std::move(act));
  Vec v(1, Cyclo(1));
  for (const auto& f : factors) {
    const Vec& c = *f.cyclic_vector;
    Vec next(v.size() * c.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) next[i * c.size() + j] = v[i] * c[j];
    v = std::move(next);
  }
  out.cyclic_vector = v;
  return out;
}

FiniteModule evaluation_module(const PsiFunction& psi, const std::shared_ptr<const InvariantAlgebra>& target) {
  const GammaGroup& grp = target->group();
  if (!is_equivariant(grp, psi)) throw InputError("psi " + psi.str() + " is not equivariant");
  const auto x = canonical_transversal(grp, psi);
  for (const auto& r : x)
    if (target->exponent_of(r) < 1) throw InputError("support orbit of " + r.str() + " is not covered by the truncation");
  const EvIso ev = ev_iso(target, x);
  return pull_back(evaluation_module(psi_restrict(grp, psi, x), ev.target), target, ev.ev);
}

FiniteModule twist(const FiniteModule& m, const std::shared_ptr<const InvariantAlgebra>& target) {
  auto T = as_trunc(m.algebra_ptr());
  if (!T) throw InputError("twisting needs a module over a truncated algebra");
  if (T->g().key() != target->group().g().key()) throw InputError("module and invariant algebra use different Lie algebras");
  const EvIso ev = ev_iso(target, T->eta().support());
  return pull_back(change_truncation(m, ev.target), target, ev.ev);
}

FiniteModule twist(const FiniteModule& m, const std::shared_ptr<const GammaGroup>& grp) {
  auto T = as_trunc(m.algebra_ptr());
  if (!T) throw InputError("twisting needs a module over a truncated algebra");
  const auto fr = validate_free_and_Xstar(*grp, T->eta().support());
  if (!fr.ok()) throw InputError(fr.violations.front());
  return twist(m, InvariantAlgebra::build(grp, T->eta()));
}

FiniteModule untwist(const FiniteModule& m, const std::vector<Point>& transversal) {
  auto inv = as_inv(m.algebra_ptr());
  if (!inv) throw InputError("untwisting needs a module over an invariant algebra");
  FiniteModule u = untwist_full(m, transversal);
  if (transversal.size() == inv->orbit_exponents().size()) return u;
  auto full = as_trunc(u.algebra_ptr());
  EtaFunction part;
  for (const auto& x : transversal) part.set(x, full->eta()(x));
  auto small = TruncatedAlgebra::build(full->g_ptr(), full->nvars(), part);
  try {
    return change_truncation(u, small);
  } catch (const CheckFailure&) {
    throw CheckFailure("annihilator support escapes the transversal");
  }
}

namespace {

// Module over a smaller truncation through which m factors.
FiniteModule restrict_to(const FiniteModule& m, const std::shared_ptr<const LieAlgebra>& smaller, const Matrix& p) {
  const std::size_t n = m.algebra().dim();
  std::vector<std::optional<std::size_t>> section(smaller->dim());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nonzero = 0, row = 0;
    for (std::size_t j = 0; j < p.rows(); ++j)
      if (!p(j, i).is_zero()) {
        ++nonzero;
        row = j;
      }
    if (nonzero == 0) {
      if (!m.action(i).is_zero())
        throw CheckFailure("module is not annihilated by the kernel of the projection to " + smaller->key());
    } else if (nonzero == 1 && !section[row]) {
      section[row] = i;
    }
  }
  std::vector<Matrix> act;
  for (std::size_t j = 0; j < smaller->dim(); ++j) {
    if (!section[j]) throw Error("projection has no basis section");
    act.push_back(m.action(*section[j]) * p(j, *section[j]).inv());
  }
  // The section covers the image; every other basis element must act through it.
  FiniteModule out(smaller, m.dim(), std::move(act));
  for (std::size_t i = 0; i < n; ++i)
    if (!(out.act(p.column(i)) == m.action(i)))
      throw CheckFailure("module is not annihilated by the kernel of the projection to " + smaller->key());
  out.cyclic_vector = m.cyclic_vector;
  return out;
}

}  // namespace

FiniteModule change_truncation(const FiniteModule& m, const std::shared_ptr<const LieAlgebra>& target) {
  if (m.algebra().key() == target->key()) {
    FiniteModule out(target, m.dim(), m.actions());
    out.cyclic_vector = m.cyclic_vector;
    return out;
  }
  auto st = as_trunc(m.algebra_ptr());
  auto tt = as_trunc(target);
  if (st && tt) {
    if (st->g().key() != tt->g().key() || st->nvars() != tt->nvars()) throw InputError("truncations of different algebras");
    EtaFunction meet;
    for (const auto& [x, e] : st->eta().entries())
      if (tt->eta()(x) > 0) meet.set(x, std::min(e, tt->eta()(x)));
    auto mt = TruncatedAlgebra::build(st->g_ptr(), st->nvars(), meet);
    FiniteModule mid = mt->key() == st->key() ? m : restrict_to(m, mt, st->projection_to(*mt));
    if (mt->key() == tt->key()) return change_truncation(mid, target);
    return pull_back(mid, target, tt->projection_to(*mt));
  }
  auto si = as_inv(m.algebra_ptr());
  auto ti = as_inv(target);
  if (si && ti) {
    if (si->group().key() != ti->group().key()) throw InputError("invariant algebras of different groups");
    EtaFunction meet;
    for (const auto& [x, e] : si->orbit_exponents().entries())
      if (ti->orbit_exponents()(x) > 0) meet.set(x, std::min(e, ti->orbit_exponents()(x)));
    auto mi = InvariantAlgebra::build(si->group_ptr(), meet);
    FiniteModule mid = mi->key() == si->key() ? m : restrict_to(m, mi, si->projection_to(*mi));
    if (mi->key() == ti->key()) return change_truncation(mid, target);
    return pull_back(mid, target, ti->projection_to(*mi));
  }
  throw InputError("cannot move a module from " + m.algebra().key() + " to " + target->key());
}

std::shared_ptr<const LieAlgebra> join_algebras(const LieAlgebra& a, const LieAlgebra& b) {
  auto* ta = dynamic_cast<const TruncatedAlgebra*>(&a);
  auto* tb = dynamic_cast<const TruncatedAlgebra*>(&b);
  if (ta && tb) {
    if (ta->g().key() != tb->g().key() || ta->nvars() != tb->nvars()) throw InputError("truncations of different algebras");
    return TruncatedAlgebra::build(ta->g_ptr(), ta->nvars(), ta->eta().join(tb->eta()));
  }
  auto* ia = dynamic_cast<const InvariantAlgebra*>(&a);
  auto* ib = dynamic_cast<const InvariantAlgebra*>(&b);
  if (ia && ib) {
    if (ia->group().key() != ib->group().key()) throw InputError("invariant algebras of different groups");
    return InvariantAlgebra::build(ia->group_ptr(), ia->orbit_exponents().join(ib->orbit_exponents()));
  }
  throw InputError("cannot join " + a.key() + " and " + b.key());
}

FiniteModule sum_common(const FiniteModule& a, const FiniteModule& b) {
  auto j = join_algebras(a.algebra(), b.algebra());
  return direct_sum(change_truncation(a, j), change_truncation(b, j));
}

FiniteModule tensor_common(const FiniteModule& a, const FiniteModule& b) {
  auto j = join_algebras(a.algebra(), b.algebra());
  return tensor(change_truncation(a, j), change_truncation(b, j));
}

int annihilator_exponent(const FiniteModule& m) {
  int top = -1;
  if (auto t = as_trunc(m.algebra_ptr())) {
    for (std::size_t i = 0; i < t->dim(); ++i)
      if (!m.action(i).is_zero()) {
        const auto c = t->coord(i);
        top = std::max(top, t->shape(c.point).degree(c.mono));
      }
  } else if (auto inv = as_inv(m.algebra_ptr())) {
    const TruncatedAlgebra& O = inv->orbit_truncation();
    for (std::size_t i = 0; i < inv->dim(); ++i)
      if (!m.action(i).is_zero()) {
        const auto& c = inv->basis_coord(i);
        const long p = O.point_index(inv->orbit_exponents().entries()[c.point].first);
        top = std::max(top, O.shape(static_cast<std::size_t>(p)).degree(c.mono));
      }
  } else {
    throw InputError("annihilator exponent needs a truncated or invariant algebra");
  }
  return top + 1;
}

EtaFunction annihilator_eta(const FiniteModule& m, const std::vector<Point>& transversal) {
  const MultiplicityTable table = multiplicities(m);
  long n = 0;
  for (const auto& [psi, k] : table) n += k;
  const auto supp = support(m);
  EtaFunction eta;
  if (auto t = as_trunc(m.algebra_ptr())) {
    for (const auto& x : supp) eta.set(x, static_cast<int>(n));
    std::vector<int> degree(t->num_points(), 0);
    for (std::size_t p = 0; p < t->num_points(); ++p) degree[p] = eta(t->point(p));
    for (const auto& v : t->filtration(degree).basis())
      if (!m.act(v).is_zero()) throw CheckFailure("annihilation check failed for eta = " + eta.str());
    return eta;
  }
  auto inv = as_inv(m.algebra_ptr());
  if (!inv) throw InputError("annihilator needs a truncated or invariant algebra");
  const GammaGroup& grp = inv->group();
  std::vector<Point> x = transversal;
  if (x.empty()) x = supp;
  for (const auto& r : supp) {
    const auto hits = std::count_if(x.begin(), x.end(), [&](const Point& y) { return same_orbit(grp, y, r); });
    if (hits != 1) throw InputError("transversal must meet the support orbit of " + r.str() + " exactly once");
  }
  for (const auto& y : x)
    if (std::any_of(supp.begin(), supp.end(), [&](const Point& r) { return same_orbit(grp, y, r); })) eta.set(y, static_cast<int>(n));
  const TruncatedAlgebra& O = inv->orbit_truncation();
  std::vector<int> degree(O.num_points(), 0);
  for (std::size_t p = 0; p < O.num_points(); ++p)
    for (const auto& [y, e] : eta.entries())
      if (same_orbit(grp, y, O.point(p))) degree[p] = e;
  for (const auto& v : inv->invariant_part(O.filtration(degree)).basis())
    if (!m.act(v).is_zero()) throw CheckFailure("annihilation check failed for eta = " + eta.str());
  return eta;
}

std::vector<LeviSpace> levi_weight_spaces(const FiniteModule& m) {
  if (as_inv(m.algebra_ptr())) return levi_weight_spaces(untwist_full(m, {}));
  auto t = as_trunc(m.algebra_ptr());
  if (!t) throw InputError("Levi weights need a truncated or invariant algebra");
  const ChevalleyAlgebra& g = t->g();
  const int rank = g.rank();
  const std::size_t d = m.dim();
  struct Piece {
    std::vector<long> ev;
    std::vector<Vec> basis;
  };
  std::vector<Piece> pieces(1);
  for (std::size_t i = 0; i < d; ++i) pieces[0].basis.push_back(unit_vec(d, i));
  bool unit = true;
  for (std::size_t p = 0; p < t->num_points(); ++p)
    for (int i = 0; i < rank; ++i) {
      const Matrix& h = m.action(t->index(p, 0, g.h(i)));
      std::vector<Piece> next;
      if (unit && h.is_diagonal()) {
        for (auto& pc : pieces) {
          std::map<long, std::vector<Vec>> split;
          for (auto& v : pc.basis) {
            std::size_t k = 0;
            while (v[k].is_zero()) ++k;
            split[integer_value(h(k, k), "Levi eigenvalue")].push_back(std::move(v));
          }
          for (auto& [c, vs] : split) {
            Piece q{pc.ev, std::move(vs)};
            q.ev.push_back(c);
            next.push_back(std::move(q));
          }
        }
      } else {
        unit = false;
        for (auto& pc : pieces) {
          const Subspace s = Subspace::span(d, pc.basis);
          const std::size_t k = s.dim();
          Matrix c(k, k);
          for (std::size_t j = 0; j < k; ++j) {
            auto col = s.coordinates(h.apply(s.basis()[j]));
            if (!col) throw CheckFailure("Levi action does not preserve a weight space");
            for (std::size_t r = 0; r < k; ++r) c(r, j) = (*col)[r];
          }
          Cyclo tr2 = 0;
          for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) tr2 += c(a, b) * c(b, a);
          const Rational q = tr2.rational();
          mpz_class bound = q.get_num() / q.get_den();
          bound = sqrt(bound) + 1;
          std::size_t found = 0;
          for (long e = -bound.get_si(); e <= bound.get_si(); ++e) {
            Matrix shifted = c;
            for (std::size_t a = 0; a < k; ++a) shifted(a, a) -= Cyclo(Rational(e));
            const Subspace ns = nullspace(shifted);
            if (ns.dim() == 0) continue;
            Piece q{pc.ev, {}};
            q.ev.push_back(e);
            for (const auto& coords : ns.basis()) {
              Vec v(d);
              for (std::size_t r = 0; r < k; ++r)
                if (!coords[r].is_zero()) axpy(v, coords[r], s.basis()[r]);
              q.basis.push_back(std::move(v));
            }
            found += ns.dim();
            next.push_back(std::move(q));
          }
          if (found != k) throw CheckFailure("Levi action is not semisimple with integral eigenvalues");
        }
      }
      pieces = std::move(next);
    }
  std::vector<LeviSpace> out;
  for (auto& pc : pieces) {
    LeviSpace s;
    for (std::size_t p = 0; p < t->num_points(); ++p) {
      Weight w = Weight::zero(rank);
      for (int i = 0; i < rank; ++i) w.coords[static_cast<std::size_t>(i)] = static_cast<int>(pc.ev[p * static_cast<std::size_t>(rank) + static_cast<std::size_t>(i)]);
      s.weight.push_back(w);
    }
    s.basis = std::move(pc.basis);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const LeviSpace& a, const LeviSpace& b) { return a.weight < b.weight; });
  return out;
}

MultiplicityTable multiplicities(const FiniteModule& m) {
  if (auto inv = as_inv(m.algebra_ptr())) {
    MultiplicityTable out;
    for (const auto& [psi, k] : multiplicities(untwist_full(m, {}))) out[psi_gamma(inv->group(), psi)] += k;
    return out;
  }
  auto t = as_trunc(m.algebra_ptr());
  if (!t) throw InputError("multiplicities need a truncated or invariant algebra");
  const RootDatum& rd = t->g().root_datum();
  std::map<std::vector<Weight>, long> ch;
  for (const auto& s : levi_weight_spaces(m)) ch[s.weight] += static_cast<long>(s.basis.size());
  MultiplicityTable table;
  long covered = 0;
  while (!ch.empty()) {
    auto best = ch.end();
    Rational best_h;
    for (auto it = ch.begin(); it != ch.end(); ++it) {
      Rational h = 0;
      for (const auto& w : it->first) h += rd.height(w);
      if (best == ch.end() || h > best_h) {
        best = it;
        best_h = h;
      }
    }
    const std::vector<Weight> top = best->first;
    const long c = best->second;
    if (c < 0 || !std::all_of(top.begin(), top.end(), [](const Weight& w) { return w.is_dominant(); }))
      throw CheckFailure("character is not a nonnegative sum of irreducible characters");
    PsiFunction psi;
    for (std::size_t p = 0; p < top.size(); ++p) psi.set(t->point(p), top[p]);
    table[psi] += c;
    std::map<std::vector<Weight>, long> prod{{{}, 1}};
    for (const auto& w : top) {
      std::map<std::vector<Weight>, long> next;
      for (const auto& [mu, k] : rd.freudenthal_mults(w))
        for (const auto& [pre, kp] : prod) {
          auto key = pre;
          key.push_back(mu);
          next[key] += kp * k;
        }
      prod = std::move(next);
    }
    long dim = 0;
    for (const auto& [mu, k] : prod) {
      dim += k;
      auto& slot = ch[mu];
      slot -= c * k;
      if (slot == 0) ch.erase(mu);
    }
    covered += c * dim;
  }
  if (covered != static_cast<long>(m.dim())) throw CheckFailure("multiplicity table does not account for the dimension");
  return table;
}

std::string format_table(const MultiplicityTable& t) {
  std::string s;
  for (const auto& [psi, k] : t) s += (s.empty() ? "" : "; ") + psi.str() + " : " + std::to_string(k);
  return s.empty() ? "(empty)" : s;
}

std::vector<Point> support(const FiniteModule& m) {
  std::set<Point> pts;
  auto inv = as_inv(m.algebra_ptr());
  for (const auto& [psi, k] : multiplicities(m))
    for (const auto& x : psi.support()) pts.insert(inv ? orbit_representative(inv->group(), x) : x);
  return {pts.begin(), pts.end()};
}

bool is_maximal_weight(const FiniteModule& m, const PsiFunction& psi) {
  const auto table = multiplicities(m);
  auto it = table.find(psi);
  if (it == table.end() || it->second != 1) return false;
  auto inv = as_inv(m.algebra_ptr());
  const RootDatum& rd = root_datum_of(m.algebra());
  auto height = [&](const PsiFunction& f) { return inv ? height_psi(inv->group(), f) : height_psi(rd, f); };
  const Rational top = height(psi);
  for (const auto& [phi, k] : table)
    if (!(phi == psi) && k != 0 && !(height(phi) < top)) return false;
  return true;
}

HomSpace hom_space(const FiniteModule& m, const FiniteModule& n) {
  require_same_algebra(m, n);
  const std::size_t dm = m.dim(), dn = n.dim();
  const std::size_t na = m.algebra().dim();
  std::vector<std::size_t> diag, rest;
  for (std::size_t u = 0; u < na; ++u) {
    if (m.action(u).is_zero() && n.action(u).is_zero()) continue;
    if (m.action(u).is_diagonal() && n.action(u).is_diagonal()) diag.push_back(u);
    else rest.push_back(u);
  }
  // unknown T(i,j): row i of N, column j of M
  std::vector<long> slot(dn * dm, -1);
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < dn; ++i)
    for (std::size_t j = 0; j < dm; ++j) {
      bool ok = true;
      for (std::size_t u : diag)
        if (!(n.action(u)(i, i) == m.action(u)(j, j))) {
          ok = false;
          break;
        }
      if (ok) {
        slot[i * dm + j] = static_cast<long>(unknowns.size());
        unknowns.emplace_back(i, j);
      }
    }
  HomSpace out;
  const std::size_t k = unknowns.size();
  if (k == 0) return out;
  const Subspace sol = nullspace_of_rows(k, [&](const std::function<bool(Vec)>& emit) {
    for (std::size_t u : rest) {
      const Matrix& a = n.action(u);
      const Matrix& b = m.action(u);
      for (std::size_t i = 0; i < dn; ++i)
        for (std::size_t j = 0; j < dm; ++j) {
          Vec row(k);
          bool any = false;
          for (std::size_t r = 0; r < dn; ++r) {
            if (a(i, r).is_zero()) continue;
            const long s = slot[r * dm + j];
            if (s >= 0) {
              row[static_cast<std::size_t>(s)] += a(i, r);
              any = true;
            }
          }
          for (std::size_t l = 0; l < dm; ++l) {
            if (b(l, j).is_zero()) continue;
            const long s = slot[i * dm + l];
            if (s >= 0) {
              row[static_cast<std::size_t>(s)] -= b(l, j);
              any = true;
            }
          }
          if (any && !is_zero(row) && !emit(std::move(row))) return;
        }
    }
  });
  for (const auto& v : sol.basis()) {
    Matrix t(dn, dm);
    for (std::size_t s = 0; s < k; ++s) t(unknowns[s].first, unknowns[s].second) = v[s];
    out.basis.push_back(std::move(t));
  }
  return out;
}

IsoResult is_isomorphic(const FiniteModule& m, const FiniteModule& n) {
  IsoResult r;
  if (m.dim() != n.dim()) {
    r.reason = "dimensions differ (" + std::to_string(m.dim()) + " vs " + std::to_string(n.dim()) + ")";
    return r;
  }
  const HomSpace h = hom_space(m, n);
  if (h.dim() == 0) {
    r.reason = m.dim() == 0 ? "" : "no nonzero intertwiner";
    r.iso = m.dim() == 0;
    if (r.iso) r.witness = Matrix(0, 0);
    return r;
  }
  auto combine = [&](const std::vector<long>& c) {
    Matrix t(n.dim(), m.dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i]) t.add_scaled(Cyclo(Rational(c[i])), h.basis[i]);
    return t;
  };
  auto accept = [&](const Matrix& t) {
    if (!inverse(t)) return false;
    r.iso = true;
    r.witness = t;
    return true;
  };
  std::mt19937 rng(20240611u);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int attempt = 0; attempt < 5; ++attempt) {
    std::vector<long> c(h.dim());
    for (auto& x : c) x = coef(rng);
    if (accept(combine(c))) return r;
  }
  // exhaustive search over coefficients in {-2..2}
  const std::size_t limit = 20000;
  std::vector<long> c(h.dim(), -2);
  for (std::size_t tries = 0; tries < limit; ++tries) {
    if (accept(combine(c))) return r;
    std::size_t i = 0;
    while (i < c.size() && c[i] == 2) c[i++] = -2;
    if (i == c.size()) break;
    ++c[i];
  }
  r.reason = "no invertible intertwiner found among " + std::to_string(h.dim()) + "-dimensional Hom space combinations";
  return r;
}

FiniteModule head(const FiniteModule& m) {
  if (auto inv = as_inv(m.algebra_ptr())) return twist(head(untwist_full(m, {})), inv);
  if (!m.cyclic_vector) throw InputError("head needs a cyclic module");
  const Vec& v = *m.cyclic_vector;
  if (generated_submodule(m, Subspace::span(m.dim(), {v})).dim() != m.dim()) throw InputError("module is not generated by its cyclic vector");
  const auto spaces = levi_weight_spaces(m);
  std::vector<Vec> all;
  std::size_t top = spaces.size();
  std::size_t first = 0;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    if (Subspace::span(m.dim(), spaces[s].basis).contains(v)) {
      top = s;
      first = all.size();
    }
    for (const auto& b : spaces[s].basis) all.push_back(b);
  }
  if (top == spaces.size()) throw InputError("cyclic vector is not a Levi weight vector");
  if (spaces[top].basis.size() != 1) throw InputError("weight space of the cyclic vector is not one-dimensional");
  auto pinv = inverse(Matrix::from_columns(all, m.dim()));
  if (!pinv) throw CheckFailure("Levi weight spaces do not span the module");
  std::vector<Matrix> dual;
  for (const auto& a : m.actions()) dual.push_back(a.transpose());
  const Subspace ann = saturate(Subspace::span(m.dim(), {pinv->row(first)}), std::span<const Matrix>(dual));
  const Subspace kernel = nullspace(Matrix::from_rows(ann.basis(), m.dim()));
  return quotient(m, kernel);
}

}  // namespace ema
