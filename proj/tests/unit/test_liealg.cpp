#include <gtest/gtest.h>

#include "ema/error.hpp"
#include "ema/group.hpp"
#include "ema/liealg.hpp"
#include "oracles.hpp"

using namespace ema;

namespace {

// Weights of a module on which every h_i acts diagonally.
std::map<Weight, long> character(const ChevalleyAlgebra& g, const FiniteModule& m) {
  std::map<Weight, long> out;
  for (std::size_t v = 0; v < m.dim(); ++v) {
    std::vector<int> w;
    for (int i = 0; i < g.rank(); ++i) {
      const Matrix& h = m.action(g.h(i));
      EXPECT_TRUE(h.is_diagonal());
      w.push_back(static_cast<int>(h(v, v).rational().get_num().get_si()));
    }
    ++out[Weight(w)];
  }
  return out;
}

std::vector<Weight> dominant_upto(int rank, int bound) {
  std::vector<Weight> out;
  std::vector<int> c(static_cast<std::size_t>(rank), 0);
  while (true) {
    out.emplace_back(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

bool preserves_brackets(const ChevalleyAlgebra& g, const Matrix& s) {
  for (std::size_t x = 0; x < g.dim(); ++x)
    for (std::size_t y = 0; y < g.dim(); ++y) {
      const Vec lhs = s.apply(to_dense(g.bracket_basis(x, y), g.dim()));
      const Vec rhs = g.bracket(s.column(x), s.column(y));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace

TEST(Chevalley, Dimensions) {
  EXPECT_EQ(build_sl(2)->dim(), 3u);
  EXPECT_EQ(build_sl(3)->dim(), 8u);
  EXPECT_EQ(build_sl(4)->dim(), 15u);
  for (int n = 2; n <= 4; ++n) EXPECT_TRUE(build_sl(n)->check_jacobi());
}

TEST(Chevalley, Sl2Relations) {
  const auto g = build_sl(2);
  const Sparse ef = g->bracket_basis(g->e(0), g->f(0));
  ASSERT_EQ(ef.size(), 1u);
  EXPECT_EQ(ef[0].index, g->h(0));
  EXPECT_EQ(ef[0].coeff, Cyclo(1));
  const Sparse he = g->bracket_basis(g->h(0), g->e(0));
  ASSERT_EQ(he.size(), 1u);
  EXPECT_EQ(he[0].coeff, Cyclo(2));
}

TEST(Chevalley, Sl3HighestRootFromMatrices) {
  const auto g = build_sl(3);
  const std::size_t theta = static_cast<std::size_t>(g->root_datum().root_index({1, 1}));
  // matrix commutator of E_12 and E_23 is E_13
  const Matrix c = commutator(g->matrix(g->e_simple(0)), g->matrix(g->e_simple(1)));
  EXPECT_EQ(c, g->matrix(g->e(theta)));
  const Sparse b = g->bracket_basis(g->e_simple(0), g->e_simple(1));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].index, g->e(theta));
  EXPECT_EQ(b[0].coeff, Cyclo(1));
  // structure constants agree with matrix brackets everywhere
  for (std::size_t x = 0; x < g->dim(); ++x)
    for (std::size_t y = 0; y < g->dim(); ++y)
      EXPECT_EQ(g->to_matrix(to_dense(g->bracket_basis(x, y), g->dim())), commutator(g->matrix(x), g->matrix(y)));
}

TEST(Automorphism, InnerInvolutionOfSl2) {
  const auto g = build_sl(2);
  const GAutomorphism s = build_automorphism(*g, DiagramSymmetry::identity(1), {1}, Cyclo(-1));
  EXPECT_EQ(s.apply(unit_vec(3, g->e(0))), scaled(unit_vec(3, g->e(0)), -1));
  EXPECT_EQ(s.apply(unit_vec(3, g->f(0))), scaled(unit_vec(3, g->f(0)), -1));
  EXPECT_EQ(s.apply(unit_vec(3, g->h(0))), unit_vec(3, g->h(0)));
  EXPECT_EQ(s.order, 2);
  EXPECT_EQ(s.map * s.map, Matrix::identity(3));
  EXPECT_TRUE(s.out_part().is_identity());
  EXPECT_TRUE(preserves_brackets(*g, s.map));
}

TEST(Automorphism, DiagramFlipOfSl3) {
  const auto g = build_sl(3);
  const GAutomorphism s = build_automorphism(*g, DiagramSymmetry::flip(2), {0, 0}, Cyclo(1));
  EXPECT_EQ(s.apply(unit_vec(8, g->e_simple(0))), unit_vec(8, g->e_simple(1)));
  EXPECT_EQ(s.apply(unit_vec(8, g->e_simple(1))), unit_vec(8, g->e_simple(0)));
  EXPECT_EQ(s.out_part(), DiagramSymmetry::flip(2));
  EXPECT_EQ(s.order, 2);
  EXPECT_TRUE(preserves_brackets(*g, s.map));
}

TEST(Automorphism, IdentityAndTorus) {
  const auto g = build_sl(2);
  const GAutomorphism id = build_automorphism(*g, DiagramSymmetry::identity(1), {0}, Cyclo(1));
  EXPECT_TRUE(id.is_identity());
  EXPECT_EQ(id.order, 1);
  const auto g3 = build_sl(3);
  const GAutomorphism t = build_automorphism(*g3, DiagramSymmetry::identity(2), {1, 2}, Cyclo::zeta(3));
  EXPECT_TRUE(t.out_part().is_identity());
  EXPECT_EQ(t.order, 3);
  EXPECT_TRUE(preserves_brackets(*g3, t.map));
  const GAutomorphism ft = build_automorphism(*g3, DiagramSymmetry::flip(2), {1, 0}, Cyclo(-1));
  EXPECT_TRUE(preserves_brackets(*g3, ft.map));
  EXPECT_EQ(ft.map * ft.inverse, Matrix::identity(8));
}

TEST(Irreducible, ExampleDimensions) {
  EXPECT_EQ(irreducible_module(build_sl(2), Weight({2})).dim(), 3u);
  EXPECT_EQ(irreducible_module(build_sl(3), Weight({1, 0})).dim(), 3u);
  EXPECT_EQ(irreducible_module(build_sl(3), Weight({1, 1})).dim(), 8u);
}

TEST(Irreducible, CharacterMatchesFreudenthal) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = build_sl(n + 1);
    for (const auto& lambda : dominant_upto(n, n == 3 ? 1 : 2)) {
      const FiniteModule v = irreducible_module(g, lambda);
      EXPECT_NO_THROW(v.verify());
      EXPECT_EQ(static_cast<long>(v.dim()), oracle::weyl_dim(lambda.coords));
      EXPECT_EQ(character(*g, v), g->root_datum().freudenthal_mults(lambda)) << lambda.str();
    }
  }
}

TEST(Irreducible, EveryVectorGenerates) {
  for (int n = 1; n <= 2; ++n) {
    const auto g = build_sl(n + 1);
    for (const auto& lambda : dominant_upto(n, 2)) {
      const FiniteModule v = irreducible_module(g, lambda);
      for (std::size_t i = 0; i < v.dim(); ++i)
        EXPECT_EQ(generated_submodule(v, Subspace::span(v.dim(), {unit_vec(v.dim(), i)})).dim(), v.dim());
      EXPECT_TRUE(is_irreducible(v));
    }
  }
}

TEST(Irreducible, PullbackAlongAutomorphismTwistsHighestWeight) {
  const auto g = build_sl(3);
  const std::vector<GAutomorphism> autos{
      build_automorphism(*g, DiagramSymmetry::flip(2), {0, 0}, Cyclo(1)),
      build_automorphism(*g, DiagramSymmetry::identity(2), {1, 0}, Cyclo(-1)),
      build_automorphism(*g, DiagramSymmetry::flip(2), {1, 0}, Cyclo(-1)),
  };
  for (const auto& s : autos)
    for (const auto& lambda : dominant_upto(2, 2)) {
      const FiniteModule v = irreducible_module(g, lambda);
      const FiniteModule p = pull_back(v, g, s.inverse);
      EXPECT_EQ(character(*g, p), g->root_datum().freudenthal_mults(diagram_act(s.out_part(), lambda)));
    }
}

TEST(Irreducible, BudgetIsEnforced) {
  EXPECT_THROW(irreducible_module(build_sl(3), Weight({3, 4}), 10), BudgetExceeded);
}

TEST(Group, Sl2InvolutionGroup) {
  const auto g = build_sl(2);
  const GammaGroup grp(g, 1, {GammaGenerator{2, {1}, DiagramSymmetry::identity(1), {1}}});
  EXPECT_EQ(grp.size(), 2u);
  EXPECT_TRUE(grp.acts_freely());
  EXPECT_EQ(grp.scaling(1)[0], Cyclo(-1));
  EXPECT_EQ(grp.sigma(1) * grp.sigma(1), Matrix::identity(3));
  EXPECT_EQ(grp.multiply(1, 1), 0u);
  // projectors onto the isotypic components sum to the identity
  EXPECT_EQ(grp.g_projector(0) + grp.g_projector(1), Matrix::identity(3));
  EXPECT_EQ(grp.g_homogeneous_basis().size(), 3u);
}

TEST(Group, ChecksReportFailures) {
  const auto g = build_sl(3);
  const std::vector<GammaGenerator> bad{GammaGenerator{2, {1, 0}, DiagramSymmetry::flip(2), {0, 0}},
                                        GammaGenerator{2, {0, 1}, DiagramSymmetry::identity(2), {1, 0}}};
  bool named = false;
  for (const auto& r : GammaGroup::check(*g, 2, bad))
    if (!r.ok && r.name.find("0,1") != std::string::npos) named = true;
  EXPECT_TRUE(named);
  EXPECT_THROW(GammaGroup(g, 2, bad), Error);
  const auto g2 = build_sl(2);
  const std::vector<GammaGenerator> trivial_scaling{GammaGenerator{2, {0}, DiagramSymmetry::identity(1), {1}}};
  bool flagged = false;
  for (const auto& r : GammaGroup::check(*g2, 1, trivial_scaling))
    if (r.name == "free action" && !r.ok) flagged = true;
  EXPECT_TRUE(flagged);
  EXPECT_THROW(GammaGroup(g2, 1, trivial_scaling), CheckFailure);
}
