#include <gtest/gtest.h>

#include <random>

#include "ema/coordalg.hpp"
#include "ema/error.hpp"
#include "oracles.hpp"

using namespace ema;

namespace {

Point pt(std::initializer_list<Cyclo> c) { return Point(std::vector<Cyclo>(c)); }

std::shared_ptr<const GammaGroup> sign_group() {
  return std::make_shared<const GammaGroup>(build_sl(2), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::identity(1), {1}}});
}

LaurentFunction random_laurent(std::mt19937& rng, int nvars) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  LaurentFunction f(nvars);
  for (int k = 0; k < 3; ++k) {
    Exponent m;
    for (int v = 0; v < nvars; ++v) m.push_back(e(rng));
    f.add_term(m, Cyclo(c(rng)));
  }
  return f;
}

Vec taylor_vec(const LaurentFunction& f, const Point& x, int e) {
  const auto shape = JetShape::get(f.nvars(), e);
  Vec v(shape->size());
  for (const auto& [beta, c] : oracle::taylor(f, x, e)) v[static_cast<std::size_t>(shape->index(beta))] = c;
  return v;
}

// (1/|G|) sum chi(g)^{-1} M_g
Matrix isotypic_projector(const GammaGroup& grp, const QuotientAlgebra& q, std::size_t chi) {
  Matrix p(q.dim(), q.dim());
  for (std::size_t g = 0; g < grp.size(); ++g) p.add_scaled(grp.character_value(chi, g).inv(), q.gamma_matrix(grp, g));
  return p * Cyclo(Rational(1) / Rational(static_cast<long>(grp.size())));
}

Subspace image(const Matrix& p, const Subspace& s) {
  std::vector<Vec> gens;
  for (const auto& v : s.basis()) gens.push_back(p.apply(v));
  return Subspace::span(p.rows(), gens);
}

}  // namespace

TEST(Jets, Examples) {
  const auto t = LaurentFunction::variable(1, 0);
  const auto tinv = LaurentFunction::monomial(1, {-1});
  EXPECT_EQ(jet_expand(t, pt({1}), 2), (Vec{1, 1}));
  EXPECT_EQ(jet_expand(tinv, pt({1}), 2), (Vec{1, -1}));
  EXPECT_EQ(jet_expand(tinv, pt({2}), 2), (Vec{Cyclo(1, 2), Cyclo(-1, 4)}));
}

TEST(Jets, AgreesWithTaylorOracle) {
  std::mt19937 rng(17);
  const std::vector<Point> pts{pt({1}), pt({-1}), pt({Cyclo::zeta(4)}), pt({1, Cyclo::zeta(3)}), pt({2, -1})};
  for (const auto& x : pts)
    for (int k = 0; k < 5; ++k) {
      const LaurentFunction f = random_laurent(rng, x.nvars());
      EXPECT_EQ(jet_expand(f, x, 4), taylor_vec(f, x, 4)) << f.str() << " at " << x.str();
    }
}

TEST(Jets, ExpansionIsMultiplicative) {
  std::mt19937 rng(23);
  for (int n = 1; n <= 2; ++n) {
    const Point x = n == 1 ? pt({Cyclo::zeta(3)}) : pt({-1, 2});
    const auto shape = JetShape::get(n, 4);
    for (int k = 0; k < 8; ++k) {
      const LaurentFunction f = random_laurent(rng, n), g = random_laurent(rng, n);
      EXPECT_EQ(jet_expand(f * g, x, 4), jet_mul(*shape, jet_expand(f, x, 4), jet_expand(g, x, 4)));
    }
  }
}

TEST(Quotient, ChineseRemainderDimension) {
  for (int n = 1; n <= 3; ++n) {
    EtaFunction eta;
    eta.set(Point(std::vector<Cyclo>(static_cast<std::size_t>(n), Cyclo(1))), 3);
    eta.set(Point(std::vector<Cyclo>(static_cast<std::size_t>(n), Cyclo(-1))), 2);
    const QuotientAlgebra q(n, eta);
    std::size_t want = 0;
    for (int e : {3, 2}) want += static_cast<std::size_t>(oracle::binom(e - 1 + n, n).get_num().get_si());
    EXPECT_EQ(q.dim(), want);
  }
}

TEST(Interpolation, Examples) {
  const LaurentFunction f = interpolate(1, {{pt({1}), 0}, {pt({-1}), -1}});
  EXPECT_EQ(f, (LaurentFunction::variable(1, 0) - LaurentFunction::constant(1, 1)) * Cyclo(1, 2));
  EXPECT_EQ(interpolate(1, {{pt({1}), 5}}), LaurentFunction::constant(1, 5));
  const LaurentFunction g = interpolate(2, {{pt({1, 1}), 1}, {pt({1, -1}), 0}});
  EXPECT_EQ(g, (LaurentFunction::constant(2, 1) + LaurentFunction::variable(2, 1)) * Cyclo(1, 2));
  EXPECT_EQ(g.evaluate(pt({1, 1})), Cyclo(1));
  EXPECT_EQ(g.evaluate(pt({1, -1})), Cyclo(0));
}

TEST(GammaAction, SignFlip) {
  const auto grp = sign_group();
  const auto t = LaurentFunction::variable(1, 0);
  EXPECT_EQ(gamma_act(*grp, 1, t), t * Cyclo(-1));
  EXPECT_EQ(gamma_act(*grp, 1, t.pow(2)), t.pow(2));
  EXPECT_EQ(gamma_orbit(*grp, pt({1})), (std::vector<Point>{pt({1}), pt({-1})}));
  EXPECT_TRUE(same_orbit(*grp, pt({1}), pt({-1})));
  EXPECT_FALSE(same_orbit(*grp, pt({1}), pt({2})));
}

TEST(GammaAction, Freeness) {
  const auto grp = sign_group();
  EXPECT_TRUE(validate_free_and_Xstar(*grp, {pt({1})}).ok());
  const FreenessReport both = validate_free_and_Xstar(*grp, {pt({1}), pt({-1})});
  EXPECT_TRUE(both.free);
  EXPECT_FALSE(both.xstar);
  EXPECT_FALSE(both.violations.empty());
}

TEST(GammaAction, MatrixOnJetsMatchesFunctionAction) {
  const auto grp = sign_group();
  EtaFunction eta;
  eta.set(pt({1}), 3);
  eta.set(pt({-1}), 3);
  const QuotientAlgebra q(1, eta);
  std::mt19937 rng(29);
  for (int k = 0; k < 5; ++k) {
    const LaurentFunction f = random_laurent(rng, 1);
    EXPECT_EQ(q.gamma_matrix(*grp, 1).apply(q.expand(f)), q.expand(gamma_act(*grp, 1, f)));
  }
}

TEST(Isotypic, Components) {
  const auto grp = sign_group();
  const auto t = LaurentFunction::variable(1, 0);
  const std::size_t even = grp->character_of_monomial({2});
  const std::size_t odd = grp->character_of_monomial({1});
  EXPECT_NE(even, odd);
  EXPECT_EQ(xi_component(*grp, t + t.pow(2), even), t.pow(2));
  EXPECT_EQ(xi_component(*grp, t + t.pow(2), odd), t);

  const auto z4 = std::make_shared<const GammaGroup>(build_sl(2), 1,
                                                     std::vector<GammaGenerator>{{4, {1}, DiagramSymmetry::identity(1), {1}}});
  const auto t3 = t.pow(3);
  const std::size_t c3 = z4->character_of_monomial({3});
  EXPECT_EQ(xi_component(*z4, t3, c3), t3);
  for (std::size_t chi = 0; chi < z4->size(); ++chi)
    if (chi != c3) {
      EXPECT_TRUE(xi_component(*z4, t3, chi).is_zero());
    }
}

TEST(Isotypic, ComponentsSumAndMultiply) {
  const auto z4 = std::make_shared<const GammaGroup>(build_sl(2), 1,
                                                     std::vector<GammaGenerator>{{4, {1}, DiagramSymmetry::identity(1), {1}}});
  std::mt19937 rng(31);
  for (int k = 0; k < 5; ++k) {
    const LaurentFunction f = random_laurent(rng, 1), g = random_laurent(rng, 1);
    LaurentFunction sum(1);
    for (std::size_t chi = 0; chi < z4->size(); ++chi) sum += xi_component(*z4, f, chi);
    EXPECT_EQ(sum, f);
    for (std::size_t a = 0; a < z4->size(); ++a)
      for (std::size_t b = 0; b < z4->size(); ++b) {
        const LaurentFunction p = xi_component(*z4, f, a) * xi_component(*z4, g, b);
        EXPECT_EQ(xi_component(*z4, p, z4->character_product(a, b)), p);
      }
  }
}

TEST(Isotypic, GradedPiecesOfIdealPowersMultiply) {
  // I = vanishing ideal of the orbit {1, -1}, seen in jets of order 6
  const auto grp = sign_group();
  EtaFunction eta;
  eta.set(pt({1}), 6);
  eta.set(pt({-1}), 6);
  const QuotientAlgebra q(1, eta);
  const Subspace i1 = q.power_filtration(1), i2 = q.power_filtration(2);
  for (std::size_t a = 0; a < grp->size(); ++a)
    for (std::size_t b = 0; b < grp->size(); ++b) {
      const Subspace ia = image(isotypic_projector(*grp, q, a), i1);
      const Subspace ib = image(isotypic_projector(*grp, q, b), i1);
      std::vector<Vec> prods;
      for (const auto& u : ia.basis())
        for (const auto& v : ib.basis()) prods.push_back(q.mul(u, v));
      const Subspace lhs = Subspace::span(q.dim(), prods);
      const Subspace rhs = image(isotypic_projector(*grp, q, grp->character_product(a, b)), i2);
      EXPECT_EQ(lhs, rhs) << a << "," << b;
    }
}
