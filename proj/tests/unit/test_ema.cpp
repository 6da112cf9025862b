#include <gtest/gtest.h>

#include "ema/ema.hpp"
#include "ema/error.hpp"
#include "oracles.hpp"

using namespace ema;

namespace {

Point pt(Cyclo c) { return Point({c}); }

std::shared_ptr<const GammaGroup> sl2_sign() {
  return std::make_shared<const GammaGroup>(build_sl(2), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::identity(1), {1}}});
}

std::shared_ptr<const GammaGroup> sl3_flip() {
  return std::make_shared<const GammaGroup>(build_sl(3), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::flip(2), {0, 0}}});
}

EtaFunction eta_of(std::initializer_list<std::pair<Cyclo, int>> e) {
  EtaFunction out;
  for (const auto& [c, k] : e) out.set(pt(c), k);
  return out;
}

bool ev_is_bracket_preserving(const EvIso& iso) {
  const LieAlgebra& s = *iso.source;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j) {
      const Vec lhs = iso.ev.apply(to_dense(s.bracket_basis(i, j), s.dim()));
      const Vec rhs = iso.target->bracket(iso.ev.column(i), iso.ev.column(j));
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<EtaFunction> eta_battery() {
  std::vector<EtaFunction> out;
  for (int a : {1, 2}) {
    out.push_back(eta_of({{1, a}}));
    for (int b : {1, 2}) out.push_back(eta_of({{1, a}, {2, b}}));
  }
  return out;
}

}  // namespace

TEST(EvaluationIso, Sl2Examples) {
  const auto grp = sl2_sign();
  const EvIso i1 = ev_gamma_iso(grp, eta_of({{1, 1}}));
  EXPECT_EQ(i1.source->dim(), 3u);
  EXPECT_EQ(i1.target->dim(), 3u);
  EXPECT_EQ(oracle::gauss_rank(i1.ev), 3u);
  const EvIso i2 = ev_gamma_iso(grp, eta_of({{1, 2}}));
  EXPECT_EQ(i2.source->dim(), 6u);
  EXPECT_EQ(i2.target->dim(), 6u);
}

TEST(EvaluationIso, TrivialGroupGivesIdentity) {
  const auto grp = GammaGroup::trivial(build_sl(2), 1);
  const EvIso iso = ev_gamma_iso(grp, eta_of({{1, 2}}));
  EXPECT_EQ(iso.ev, Matrix::identity(iso.target->dim()));
}

TEST(EvaluationIso, InvertibleAndBracketPreservingOnBattery) {
  for (const auto& grp : {sl2_sign(), sl3_flip()})
    for (const auto& eta : eta_battery()) {
      const EvIso iso = ev_gamma_iso(grp, eta);
      EXPECT_EQ(iso.source->dim(), iso.target->dim()) << eta.str();
      EXPECT_EQ(iso.ev * iso.inverse, Matrix::identity(iso.target->dim()));
      EXPECT_EQ(iso.inverse * iso.ev, Matrix::identity(iso.source->dim()));
      EXPECT_TRUE(ev_is_bracket_preserving(iso)) << eta.str();
    }
}

TEST(EvaluationIso, RejectsTwoPointsOfOneOrbit) {
  EXPECT_THROW(ev_gamma_iso(sl2_sign(), eta_of({{1, 1}, {-1, 1}})), InputError);
}

TEST(EvaluationIso, CommutingSquare) {
  for (const auto& grp : {sl2_sign(), sl3_flip()}) {
    const EvIso small = ev_gamma_iso(grp, eta_of({{1, 1}, {2, 1}}));
    const EvIso big = ev_gamma_iso(grp, eta_of({{1, 2}, {2, 3}}));
    const Matrix left = big.target->projection_to(*small.target) * big.ev;
    const Matrix right = small.ev * big.source->projection_to(*small.source);
    EXPECT_EQ(left, right);
  }
}

TEST(InvariantAlgebra, GradingIsHomogeneousAndMultiplicative) {
  for (const auto& grp : {sl2_sign(), sl3_flip()}) {
    const auto inv = InvariantAlgebra::build(grp, eta_of({{1, 3}}));
    for (std::size_t i = 0; i < inv->dim(); ++i)
      for (std::size_t j = 0; j < inv->dim(); ++j) {
        const std::size_t want = grp->character_product(inv->xi_label(i), inv->xi_label(j));
        for (const auto& t : inv->bracket_basis(i, j)) EXPECT_EQ(inv->xi_label(t.index), want);
      }
  }
}

TEST(InvariantAlgebra, GradedDimensionsMatchTensorDecomposition) {
  for (const auto& grp : {sl2_sign(), sl3_flip()}) {
    const EtaFunction reps = eta_of({{1, 3}});
    const auto inv = InvariantAlgebra::build(grp, reps);
    const QuotientAlgebra q(1, eta_of({{1, 3}, {-1, 3}}));
    std::size_t total = 0;
    for (std::size_t xi = 0; xi < grp->size(); ++xi) {
      const std::size_t dg = oracle::gauss_rank(grp->g_projector(xi));
      // functions of the inverse class pair with g_xi
      const std::size_t fx = grp->inverse(xi);
      Matrix p(q.dim(), q.dim());
      for (std::size_t g = 0; g < grp->size(); ++g) p.add_scaled(grp->character_value(fx, g).inv(), q.gamma_matrix(*grp, g));
      const std::size_t da = oracle::gauss_rank(p);
      std::size_t count = 0;
      for (std::size_t i = 0; i < inv->dim(); ++i)
        if (inv->xi_label(i) == xi) ++count;
      EXPECT_EQ(count, dg * da) << "class " << xi;
      total += dg * da;
    }
    EXPECT_EQ(total, inv->dim());
    EXPECT_EQ(inv->dim(), TruncatedAlgebra::build(grp->g_ptr(), 1, reps)->dim());
  }
}

TEST(Lift, WorkedExample) {
  const auto grp = sl2_sign();
  const auto& g = grp->g();
  const auto one = LaurentFunction::constant(1, 1);
  const auto t = LaurentFunction::variable(1, 0);
  const LiftResult r = constructive_lift(*grp, unit_vec(3, g.e(0)), one, pt(1), eta_of({{1, 1}}), 2);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(r.xi, Cyclo(-1));
  EXPECT_EQ(r.f1, (t - one) * Cyclo(1, 2));
  EXPECT_EQ(r.f2, (t + one) * Cyclo(1, 2));
  EXPECT_EQ(r.components[g.e(0)], t);
  EXPECT_TRUE(r.components[g.h(0)].is_zero());
  EXPECT_TRUE(r.components[g.f(0)].is_zero());
  EXPECT_TRUE(r.ok());
}

TEST(Lift, FixedElementEvaluatesBack) {
  const auto grp = sl2_sign();
  const auto& g = grp->g();
  const LiftResult r = constructive_lift(*grp, unit_vec(3, g.h(0)), LaurentFunction::constant(1, 1), pt(1),
                                         eta_of({{1, 1}}), 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.components[g.h(0)].evaluate(pt(1)), Cyclo(1));
  EXPECT_EQ(r.components[g.e(0)].evaluate(pt(1)), Cyclo(0));
}

TEST(Lift, TrivialGroup) {
  const auto grp = GammaGroup::trivial(build_sl(2), 1);
  const auto& g = grp->g();
  const auto t = LaurentFunction::variable(1, 0);
  const EtaFunction eta = eta_of({{1, 2}, {2, 1}});
  const LiftResult r = constructive_lift(*grp, unit_vec(3, g.f(0)), t, pt(1), eta, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.components[g.f(0)], r.f2);
  // f2 = f mod m_1^2 and f2 in m_2^2, checked by Taylor expansion
  EXPECT_TRUE(oracle::in_power_of_max_ideal(r.f2 - t, pt(1), 2));
  EXPECT_TRUE(oracle::in_power_of_max_ideal(r.f2, pt(2), 2));
}

TEST(Lift, RejectsFieldWithoutRoot) {
  const auto grp = sl2_sign();
  EXPECT_THROW(constructive_lift(*grp, unit_vec(3, 0), LaurentFunction::constant(1, 1), pt(1), eta_of({{1, 2}}), 2),
               InputError);
}

TEST(IdealIdentities, Sl2Examples) {
  const auto grp = sl2_sign();
  EXPECT_TRUE(power_ideal_check(grp, {pt(1)}, 1, 2, 5));
  EXPECT_TRUE(power_ideal_check(grp, {pt(1)}, 1, 1, 3));
  EXPECT_TRUE(power_ideal_check(GammaGroup::trivial(build_sl(2), 1), {pt(1), pt(2)}, 1, 2, 5));
  for (int e : {1, 2}) EXPECT_TRUE(ideal_equality_check(grp, eta_of({{1, e}}), 2 * e + 1));
  EXPECT_THROW(power_ideal_check(grp, {pt(1)}, 1, 2, 2), InputError);
}

TEST(IdealIdentities, Sl3Flip) {
  const auto grp = sl3_flip();
  for (int m : {1, 2}) EXPECT_TRUE(power_ideal_check(grp, {pt(1)}, 1, m, 2 * m + 1));
  EXPECT_TRUE(ideal_equality_check(grp, eta_of({{1, 2}, {2, 1}}), 5));
}
