// Acceptance suite: one PASS/FAIL line per criterion.
//
// Every comparison is exact (cyclotomic arithmetic); the only numeric
// thresholds are the runtime budgets below.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ema/ema.hpp"
#include "ema/error.hpp"
#include "ema/homology.hpp"
#include "ema/weyl.hpp"
#include "oracles.hpp"

using namespace ema;

namespace {

constexpr std::size_t kExactTolerance = 0;  // dimension and matrix comparisons
constexpr double kEvIsoCaseSeconds = 5;
constexpr double kLiftSeconds = 10;
constexpr double kWeylSeconds = 60;
constexpr double kHomologySeconds = 300;
constexpr int kLiftInstances = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool exact_eq(std::size_t a, std::size_t b) { return (a > b ? a - b : b - a) <= kExactTolerance; }

// Failure details collected while a criterion runs.
struct Log {
  std::vector<std::string> notes;
  bool ok = true;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 8) notes.push_back(what);
    }
  }
};

Point pt(Cyclo c) { return Point({c}); }

std::shared_ptr<const GammaGroup> sl2_sign() {
  return std::make_shared<const GammaGroup>(build_sl(2), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::identity(1), {1}}});
}

std::shared_ptr<const GammaGroup> sl3_flip() {
  return std::make_shared<const GammaGroup>(build_sl(3), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::flip(2), {0, 0}}});
}

std::vector<std::pair<std::string, std::shared_ptr<const GammaGroup>>> scenarios() {
  return {{"sl2/Z2", sl2_sign()}, {"sl3/flip", sl3_flip()}};
}

PsiFunction psi_of(std::initializer_list<std::pair<Cyclo, std::vector<int>>> e) {
  PsiFunction p;
  for (const auto& [c, w] : e) p.set(pt(c), Weight(w));
  return p;
}

std::vector<int> fundamental(int rank, int i, int k = 1) {
  std::vector<int> w(static_cast<std::size_t>(rank), 0);
  w[static_cast<std::size_t>(i)] = k;
  return w;
}

EtaFunction eta_of(std::initializer_list<std::pair<Cyclo, int>> e) {
  EtaFunction out;
  for (const auto& [c, k] : e) out.set(pt(c), k);
  return out;
}

bool same_matrices(const FiniteModule& a, const FiniteModule& b) {
  return a.algebra().same_as(b.algebra()) && a.dim() == b.dim() && a.actions() == b.actions();
}

bool is_intertwiner(const FiniteModule& m, const FiniteModule& n, const Matrix& p) {
  for (std::size_t x = 0; x < m.algebra().dim(); ++x)
    if (n.action(x) * p != p * m.action(x)) return false;
  return true;
}

FiniteModule eval_at(const std::shared_ptr<const ChevalleyAlgebra>& g, const PsiFunction& psi, int e = 1) {
  return evaluation_module(psi, TruncatedAlgebra::build(g, 1, eta_on_support(psi, e)));
}

// ---------------------------------------------------------------------------

Log evaluation_isomorphism() {
  Log log;
  for (const auto& [name, grp] : scenarios())
    for (int a : {1, 2}) {
      std::vector<EtaFunction> etas{eta_of({{1, a}})};
      for (int b : {1, 2}) etas.push_back(eta_of({{1, a}, {2, b}}));
      for (const auto& eta : etas) {
        const auto t0 = Clock::now();
        const EvIso iso = ev_gamma_iso(grp, eta);
        const std::string tag = name + " " + eta.str();
        const std::size_t n = iso.target->dim();
        log.require(exact_eq(iso.source->dim(), TruncatedAlgebra::build(grp->g_ptr(), 1, eta)->dim()),
                    tag + ": dimensions differ");
        log.require(exact_eq(oracle::gauss_rank(iso.ev), n) && iso.source->dim() == n, tag + ": not invertible");
        log.require(iso.ev * iso.inverse == Matrix::identity(n), tag + ": inverse is wrong");
        const LieAlgebra& s = *iso.source;
        bool brackets = true;
        for (std::size_t i = 0; i < s.dim() && brackets; ++i)
          for (std::size_t j = i + 1; j < s.dim() && brackets; ++j)
            brackets = iso.ev.apply(to_dense(s.bracket_basis(i, j), s.dim())) ==
                       iso.target->bracket(iso.ev.column(i), iso.ev.column(j));
        log.require(brackets, tag + ": brackets not preserved");
        log.require(seconds_since(t0) < kEvIsoCaseSeconds, tag + ": over the per-case time budget");
      }
    }
  return log;
}

// ---------------------------------------------------------------------------

LaurentFunction random_laurent(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  LaurentFunction f(1);
  for (int k = 0; k < 3; ++k) f.add_term({e(rng)}, Cyclo(c(rng)));
  return f;
}

Log constructive_lifts() {
  Log log;
  const auto t0 = Clock::now();
  const std::vector<Cyclo> candidates{1, 2, 3, Cyclo(1, 2)};  // pairwise distinct orbits
  std::mt19937 rng(2024);
  for (const auto& [name, grp] : scenarios()) {
    const std::size_t dg = grp->g().dim();
    for (int inst = 0; inst < kLiftInstances; ++inst) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      std::uniform_int_distribution<int> expo(1, 3), coeff(-2, 2), coin(0, 1);
      const std::size_t ix = pick(rng);
      const Point x = pt(candidates[ix]);
      EtaFunction eta;
      eta.set(x, expo(rng));
      if (coin(rng)) {
        std::size_t iy = pick(rng);
        if (iy == ix) iy = (iy + 1) % candidates.size();
        eta.set(pt(candidates[iy]), expo(rng));
      }
      Vec a(dg);
      for (auto& v : a) v = Cyclo(coeff(rng));
      const LaurentFunction f = random_laurent(rng);
      int n = 0;
      for (const auto& [p, k] : eta.entries()) n = std::max(n, k);
      const LiftResult r = constructive_lift(*grp, a, f, x, eta, 2 * n);
      const std::string tag = name + " #" + std::to_string(inst);

      log.require(r.n == n && r.xi.pow(n) == Cyclo(-1), tag + ": xi is not an n-th root of -1");
      // f1 vanishes at x and is xi on the rest of the support orbits
      log.require(r.f1.evaluate(x).is_zero(), tag + ": f1(x) != 0");
      std::vector<Point> others;
      for (const auto& [p, k] : eta.entries())
        for (const auto& z : gamma_orbit(*grp, p))
          if (z != x) others.push_back(z);
      for (const auto& z : others) log.require(r.f1.evaluate(z) == r.xi, tag + ": f1 != xi at " + z.str());

      // condition 1: f2 in f + m_x^n
      log.require(oracle::in_power_of_max_ideal(r.f2 - f, x, n), tag + ": f2 - f not in m_x^n");
      // condition 2: f2 in m_z^n away from x
      for (const auto& z : others)
        log.require(oracle::in_power_of_max_ideal(r.f2, z, n), tag + ": f2 not in m^n at " + z.str());
      // condition 3: alpha is invariant, matches a (x) f at x and vanishes on the other orbits
      log.require(r.components.size() == dg, tag + ": wrong component count");
      if (r.components.size() != dg) continue;
      for (std::size_t gm = 1; gm < grp->size(); ++gm) {
        const Matrix& s = grp->sigma(gm);
        for (std::size_t k = 0; k < dg; ++k) {
          LaurentFunction moved(1);
          for (std::size_t j = 0; j < dg; ++j)
            if (!s(k, j).is_zero()) moved += gamma_act(*grp, gm, r.components[j]) * s(k, j);
          log.require(moved == r.components[k], tag + ": alpha is not invariant");
        }
      }
      const int ex = eta(x);
      for (std::size_t k = 0; k < dg; ++k) {
        log.require(oracle::in_power_of_max_ideal(r.components[k] - f * a[k], x, ex),
                    tag + ": alpha != a (x) f modulo m_x^eta(x)");
        for (const auto& [p, e] : eta.entries())
          if (!same_orbit(*grp, p, x))
            for (const auto& z : gamma_orbit(*grp, p))
              log.require(oracle::in_power_of_max_ideal(r.components[k], z, e), tag + ": alpha nonzero at " + z.str());
      }
      log.require(r.ok(), tag + ": library self-check failed");
    }
  }
  log.require(seconds_since(t0) < kLiftSeconds, "over the time budget");
  log.notes.insert(log.notes.begin(), std::to_string(2 * kLiftInstances) + " instances");
  return log;
}

// ---------------------------------------------------------------------------

Log ideal_identities() {
  Log log;
  for (const auto& [name, grp] : scenarios()) {
    for (int m : {1, 2, 3}) {
      log.require(power_ideal_check(grp, {pt(1)}, 1, m, 2 * m + 1), name + ": power identity m=" + std::to_string(m));
      log.require(power_ideal_check(grp, {pt(1), pt(2)}, 1, m, 2 * m + 1),
                  name + ": two-orbit power identity m=" + std::to_string(m));
    }
    for (const auto& eta : {eta_of({{1, 1}}), eta_of({{1, 2}}), eta_of({{1, 1}, {2, 2}}), eta_of({{1, 2}, {2, 2}})}) {
      int top = 0;
      for (const auto& [p, k] : eta.entries()) top = std::max(top, k);
      log.require(ideal_equality_check(grp, eta, 2 * top + 1), name + ": ideal equality " + eta.str());
    }
  }
  return log;
}

// ---------------------------------------------------------------------------

std::vector<FiniteModule> module_battery(const std::shared_ptr<const GammaGroup>& grp) {
  const auto g = grp->g_ptr();
  const int r = g->rank();
  const PsiFunction a = psi_of({{1, fundamental(r, 0)}}), b = psi_of({{1, fundamental(r, 0, 2)}}),
                    c = psi_of({{2, fundamental(r, r - 1)}}), ac = psi_sum(a, c);
  std::vector<FiniteModule> out;
  out.push_back(eval_at(g, a));
  out.push_back(eval_at(g, b));
  out.push_back(eval_at(g, ac));
  out.push_back(eval_at(g, b, 2));
  out.push_back(sum_common(eval_at(g, a), eval_at(g, b)));
  out.push_back(tensor_common(eval_at(g, a), eval_at(g, c)));
  out.push_back(tensor_common(eval_at(g, a), eval_at(g, a)));
  out.push_back(weyl_module(g, 1, b).module);
  out.push_back(sum_common(weyl_module(g, 1, b).module, eval_at(g, PsiFunction{})));
  out.push_back(FiniteModule::trivial(TruncatedAlgebra::build(g, 1, eta_on_support(a, 2)), 2));
  out.push_back(weyl_module(g, 1, psi_of({{1, fundamental(r, r - 1)}})).module);
  if (r == 1) out.push_back(weyl_module(g, 1, ac).module);
  return out;
}

Log category_isomorphism() {
  Log log;
  for (const auto& [name, grp] : scenarios()) {
    const auto battery = module_battery(grp);
    log.require(battery.size() >= 10, name + ": battery too small");
    for (std::size_t i = 0; i < battery.size(); ++i) {
      const FiniteModule& m = battery[i];
      const std::string tag = name + " module " + std::to_string(i);
      const auto* trunc = dynamic_cast<const TruncatedAlgebra*>(&m.algebra());
      log.require(trunc != nullptr, tag + ": not over a truncated algebra");
      if (!trunc) continue;
      const FiniteModule t = twist(m, grp);
      const std::vector<Point> x = trunc->eta().support();
      const FiniteModule ut = untwist(t, x);
      log.require(same_matrices(ut, m), tag + ": U(T(M)) != M");
      const auto inv = std::dynamic_pointer_cast<const InvariantAlgebra>(t.algebra_ptr());
      log.require(inv != nullptr, tag + ": T(M) not over an invariant algebra");
      if (inv) log.require(same_matrices(twist(ut, inv), t), tag + ": T(U(N)) != N");
    }
    const auto g = grp->g_ptr();
    const int r = g->rank();
    const std::vector<PsiFunction> psis{psi_of({{1, fundamental(r, 0)}}), psi_of({{1, fundamental(r, 0, 2)}}),
                                        psi_of({{1, fundamental(r, r - 1)}}),
                                        psi_of({{1, fundamental(r, 0)}, {2, fundamental(r, r - 1)}}),
                                        psi_of({{2, std::vector<int>(static_cast<std::size_t>(r), 1)}})};
    for (const auto& p : psis) {
      const PsiFunction pg = psi_gamma(*grp, p);
      log.require(multiplicities(twist(eval_at(g, p), grp)) == MultiplicityTable{{pg, 1}},
                  name + ": multiplicities of T(V(" + p.str() + "))");
      const FiniteModule vg = evaluation_module(pg, InvariantAlgebra::build(grp, eta_on_support(pg, 1)));
      log.require(multiplicities(untwist(vg, p.support())) == MultiplicityTable{{p, 1}},
                  name + ": multiplicities of U_x(V_Gamma(" + pg.str() + "))");
    }
  }
  return log;
}

// ---------------------------------------------------------------------------

Log weyl_certificates() {
  Log log;
  const auto t0 = Clock::now();
  const auto g = build_sl(2);
  std::ostringstream dims;
  for (int lambda = 1; lambda <= 3; ++lambda) {
    const std::size_t want = oracle::Sl2WeylOracle(lambda, lambda).dim();
    const WeylModule w = weyl_module(g, 1, psi_of({{1, {lambda}}}));
    const std::string tag = "lambda=" + std::to_string(lambda);
    log.require(exact_eq(w.module.dim(), want), tag + ": saturation " + std::to_string(w.module.dim()) + " vs oracle " +
                                                    std::to_string(want));
    log.require(exact_eq(w.certificate.dim_extra_buffer, want), tag + ": buffer perturbation differs");
    log.require(exact_eq(w.certificate.dim_extra_n, want), tag + ": N perturbation differs");
    log.require(exact_eq(w.certificate.dim_reversed, want), tag + ": order perturbation differs");
    dims << (lambda > 1 ? "," : "") << want;
  }
  log.require(seconds_since(t0) < kWeylSeconds, "over the time budget");
  log.notes.insert(log.notes.begin(), "oracle dims " + dims.str());
  return log;
}

// ---------------------------------------------------------------------------

Log twisted_weyl_suite() {
  Log log;
  const auto s2 = sl2_sign(), s3 = sl3_flip();
  const std::vector<std::pair<std::shared_ptr<const GammaGroup>, PsiFunction>> cases{
      {s2, psi_of({{1, {2}}})},
      {s2, psi_of({{1, {1}}, {2, {1}}})},
      {s3, psi_of({{1, {1, 0}}})},
      {s3, psi_of({{1, {0, 1}}})},
  };
  for (const auto& [grp, px] : cases) {
    const PsiFunction pg = psi_gamma(*grp, px);
    const std::string tag = pg.str();
    log.require(check_choice_independence(grp, pg), tag + ": transversals give different modules");
    const FiniteModule wg = twisted_weyl(grp, pg, px.support());
    const FiniteModule u = untwist(wg, px.support());
    log.require(same_matrices(u, weyl_module(grp->g_ptr(), 1, px).module), tag + ": U_x(W_Gamma) != W(psi_x)");
    for (std::size_t gm = 1; gm < grp->size(); ++gm)
      log.require(check_gamma_twist(grp, px, gm), tag + ": gamma-twist fails for element " + std::to_string(gm));
  }
  return log;
}

// ---------------------------------------------------------------------------

Log tensor_factorization() {
  Log log;
  const auto s2 = sl2_sign();
  const auto g = s2->g_ptr();
  const std::vector<std::pair<PsiFunction, PsiFunction>> pairs{
      {psi_of({{1, {1}}}), psi_of({{2, {1}}})},
      {psi_of({{1, {2}}}), psi_of({{2, {1}}})},
      {psi_of({{1, {1}}}), psi_of({{3, {2}}})},
  };
  for (const auto& [a, b] : pairs) {
    const std::string tag = a.str() + " + " + b.str();
    const TensorReport u = tensor_check(g, 1, a, b);
    log.require(exact_eq(u.dim_sum, u.dim_tensor) && u.iso, tag + ": untwisted");
    const TensorReport t = tensor_check(s2, psi_gamma(*s2, a), psi_gamma(*s2, b));
    log.require(exact_eq(t.dim_sum, t.dim_tensor) && t.iso, tag + ": twisted");
  }
  const auto s3 = sl3_flip();
  const TensorReport t3 = tensor_check(s3, psi_gamma(*s3, psi_of({{1, {1, 0}}})), PsiFunction{});
  log.require(exact_eq(t3.dim_sum, t3.dim_tensor) && t3.iso, "sl3 flip with zero psi");
  return log;
}

// ---------------------------------------------------------------------------

Log maximal_weight_and_head() {
  Log log;
  for (const auto& [name, grp] : scenarios()) {
    const int r = grp->g().rank();
    for (const PsiFunction& px : {psi_of({{1, fundamental(r, 0, 2)}}), psi_of({{1, fundamental(r, 0)}, {2, fundamental(r, r - 1)}})}) {
      if (r > 1 && px.size() > 1) continue;
      const PsiFunction pg = psi_gamma(*grp, px);
      log.require(is_maximal_weight(twisted_weyl(grp, pg), pg), name + ": W_Gamma(" + pg.str() + ") not maximal weight");
    }
  }
  const std::vector<std::pair<std::shared_ptr<const ChevalleyAlgebra>, PsiFunction>> heads{
      {build_sl(2), psi_of({{1, {2}}})},
      {build_sl(2), psi_of({{1, {1}}, {2, {1}}})},
      {build_sl(2), psi_of({{1, {3}}})},
      {build_sl(3), psi_of({{1, {1, 1}}})},
  };
  for (const auto& [g, p] : heads) {
    const FiniteModule w = weyl_module(g, 1, p).module;
    const FiniteModule h = head(w);
    const auto alg = std::dynamic_pointer_cast<const TruncatedAlgebra>(w.algebra_ptr());
    log.require(alg != nullptr, p.str() + ": Weyl module not over a truncated algebra");
    if (!alg) continue;
    const FiniteModule v = evaluation_module(p, alg);
    const IsoResult iso = is_isomorphic(h, v);
    log.require(iso.iso && iso.witness, "head(W(" + p.str() + ")) not isomorphic to V");
    if (iso.witness) {
      log.require(inverse(*iso.witness).has_value(), p.str() + ": witness not invertible");
      log.require(is_intertwiner(h, v, *iso.witness), p.str() + ": witness not an intertwiner");
    }
  }
  return log;
}

// ---------------------------------------------------------------------------

// The socle V(0) of W(2w) and its quotient give a class in H^1(Hom(V(2w), V(0))).
bool weyl_extension_cocycle(Log& log) {
  const auto g = build_sl(2);
  const FiniteModule w = weyl_module(g, 1, psi_of({{1, {2}}})).module;
  const std::size_t d = w.dim(), n = w.algebra().dim();
  std::vector<Vec> rows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < d; ++i) rows.push_back(w.action(x).row(i));
  const Subspace socle = nullspace(Matrix::from_rows(rows, d));
  log.require(socle.dim() == 1, "socle of W(2w) is not one-dimensional");
  if (socle.dim() != 1) return false;
  // basis: complement vectors first, socle vector last
  const Vec z = socle.basis()[0];
  std::vector<Vec> cols;
  Eliminator e(d);
  e.insert(z);
  for (std::size_t i = 0; i < d && cols.size() < d - 1; ++i)
    if (e.insert(unit_vec(d, i))) cols.push_back(unit_vec(d, i));
  cols.push_back(z);
  Matrix b(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) b(i, j) = cols[j][i];
  const auto binv = inverse(b);
  if (!binv) return false;
  std::vector<Matrix> top;
  Vec cocycle(n * (d - 1));
  for (std::size_t x = 0; x < n; ++x) {
    const Matrix a = *binv * w.action(x) * b;
    Matrix q(d - 1, d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i)
      for (std::size_t j = 0; j + 1 < d; ++j) q(i, j) = a(i, j);
    top.push_back(q);
    for (std::size_t j = 0; j + 1 < d; ++j) cocycle[x * (d - 1) + j] = a(d - 1, j);
  }
  const FiniteModule quot(w.algebra_ptr(), d - 1, top);
  const auto alg = std::dynamic_pointer_cast<const TruncatedAlgebra>(w.algebra_ptr());
  const FiniteModule v = evaluation_module(psi_of({{1, {2}}}), alg);
  log.require(is_isomorphic(quot, v).iso, "W(2w)/socle is not V(2w)");
  const CEComplex c(hom_module(quot, FiniteModule::trivial(w.algebra_ptr())));
  log.require(is_zero(c.d1(cocycle)), "extension class is not a cocycle");
  std::vector<Vec> bounds;
  for (std::size_t j = 0; j < c.d0().cols(); ++j) bounds.push_back(c.d0().column(j));
  const bool nonsplit = !Subspace::span(c.dim_c1(), bounds).contains(cocycle);
  log.require(nonsplit, "extension class is a coboundary");
  return nonsplit;
}

Log homological_battery() {
  Log log;
  const auto t0 = Clock::now();
  const auto grp = sl2_sign();
  const PsiFunction pg = psi_gamma(*grp, psi_of({{1, {2}}}));
  const FiniteModule wg = twisted_weyl(grp, pg);
  const BatteryReport pass = characterization_battery(wg, pg, 2, 3);
  log.require(pass.pass, "battery does not pass on W_Gamma(psi)");
  log.require(!characterization_battery(head(wg), pg, 2, 3).pass, "battery passes on the head");
  const FiniteModule padded = sum_common(wg, irreducible_like(wg, PsiFunction{}));
  log.require(!characterization_battery(padded, pg, 2, 3).pass, "battery passes on the padded sum");

  const auto g = grp->g_ptr();
  const auto alg = TruncatedAlgebra::build(g, 1, eta_on_support(psi_of({{1, {2}}}), 1));
  const ExtLadder ladder =
      ext1_ladder(evaluation_module(psi_of({{1, {2}}}), alg), evaluation_module(PsiFunction{}, alg), 3);
  std::ostringstream dims;
  for (const auto& r : ladder.rungs) {
    log.require(r.dim >= 1, "Ext ladder vanishes at exponent " + std::to_string(r.exponent));
    dims << (dims.tellp() ? "," : "") << r.dim;
  }
  log.require(ladder.rungs.size() == 3, "ladder has the wrong number of rungs");
  weyl_extension_cocycle(log);
  log.require(seconds_since(t0) < kHomologySeconds, "over the time budget");
  log.notes.insert(log.notes.begin(), "Ext ladder " + dims.str());
  return log;
}

// ---------------------------------------------------------------------------

Log cli_determinism() {
  Log log;
  const std::string dir = EMA_FIXTURES_DIR;
  std::ifstream cases(dir + "/cases.txt");
  log.require(static_cast<bool>(cases), "cannot read cases.txt");
  std::string line;
  int count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    std::string name;
    int code = 0;
    in >> name >> code;
    std::vector<std::string> args;
    for (std::string a; in >> a;) args.push_back(a);
    if (args.size() < 2) {
      log.require(false, name + ": malformed case");
      continue;
    }
    args[1] = dir + "/scenarios/" + args[1];
    std::ifstream gf(dir + "/golden/" + name + ".txt", std::ios::binary);
    std::stringstream golden;
    golden << gf.rdbuf();
    std::string outs[2];
    for (int k = 0; k < 2; ++k) {
      std::ostringstream out, err;
      const int got = cli::run_cli(args, out, err);
      log.require(got == code, name + ": exit " + std::to_string(got) + ", expected " + std::to_string(code));
      outs[k] = out.str();
    }
    log.require(outs[0] == outs[1], name + ": runs differ");
    log.require(outs[0] == golden.str(), name + ": output differs from golden");
    ++count;
  }
  log.notes.insert(log.notes.begin(), std::to_string(count) + " cases");
  return log;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Log()>>> criteria{
      {"evaluation isomorphism", evaluation_isomorphism},
      {"constructive lift", constructive_lifts},
      {"ideal identities", ideal_identities},
      {"category isomorphism", category_isomorphism},
      {"Weyl dimension certificates", weyl_certificates},
      {"twisted Weyl modules", twisted_weyl_suite},
      {"tensor factorization", tensor_factorization},
      {"maximal weight and head", maximal_weight_and_head},
      {"homological battery", homological_battery},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Log log;
    try {
      log = criteria[i].second();
    } catch (const std::exception& e) {
      log.ok = false;
      log.notes.push_back(std::string("exception: ") + e.what());
    }
    if (!log.ok) ++failed;
    std::ostringstream time;
    time.setf(std::ios::fixed);
    time.precision(2);
    time << seconds_since(t0);
    std::cout << (log.ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << " (" << time.str()
              << " s)";
    for (const auto& n : log.notes) std::cout << "; " << n;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
