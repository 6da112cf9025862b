#include <gtest/gtest.h>

#include <cstdlib>

#include "ema/error.hpp"
#include "ema/weyl.hpp"
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

PsiFunction psi_of(std::initializer_list<std::pair<Cyclo, std::vector<int>>> e) {
  PsiFunction p;
  for (const auto& [c, w] : e) p.set(pt(c), Weight(w));
  return p;
}

bool iso_after_join(const FiniteModule& a, const FiniteModule& b) {
  const auto j = join_algebras(a.algebra(), b.algebra());
  return is_isomorphic(change_truncation(a, j), change_truncation(b, j)).iso;
}

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    setenv(name, value, 1);
  }
  ~EnvGuard() {
    if (old_.empty())
      unsetenv(name_);
    else
      setenv(name_, old_.c_str(), 1);
  }

 private:
  const char* name_;
  std::string old_;
};

}  // namespace

TEST(Weyl, Sl2OnePointMatchesOracle) {
  const auto g = build_sl(2);
  for (int lambda = 0; lambda <= 3; ++lambda) {
    const WeylModule w = weyl_module(g, 1, psi_of({{1, {lambda}}}));
    EXPECT_EQ(w.module.dim(), std::size_t{1} << lambda) << lambda;
    EXPECT_EQ(w.module.dim(), oracle::Sl2WeylOracle(lambda, std::max(1, lambda)).dim()) << lambda;
    EXPECT_NO_THROW(w.module.verify());
  }
}

TEST(Weyl, Sl2TwoPointsIsTensorOfLocal) {
  const auto g = build_sl(2);
  const WeylModule w = weyl_module(g, 1, psi_of({{1, {1}}, {2, {2}}}));
  EXPECT_EQ(w.module.dim(), 8u);
  const TensorReport r = tensor_check(g, 1, psi_of({{1, {1}}}), psi_of({{2, {2}}}));
  EXPECT_EQ(r.dim_sum, 8u);
  EXPECT_EQ(r.dim_tensor, 8u);
  EXPECT_TRUE(r.iso);
}

TEST(Weyl, CertificatePerturbationsAgree) {
  const auto g = build_sl(2);
  const WeylModule w = weyl_module(g, 1, psi_of({{1, {2}}}));
  EXPECT_EQ(w.certificate.dim_extra_buffer, w.module.dim());
  EXPECT_EQ(w.certificate.dim_extra_n, w.module.dim());
  EXPECT_EQ(w.certificate.dim_reversed, w.module.dim());
  EXPECT_FALSE(w.certificate.passed.empty());
  WeylOptions o;
  o.certify = false;
  o.extra_n = 2;
  o.extra_buffer = 1;
  EXPECT_EQ(weyl_module(g, 1, psi_of({{1, {2}}}), o).module.dim(), 4u);
  o.reverse_order = true;
  EXPECT_EQ(weyl_module(g, 1, psi_of({{1, {2}}}), o).module.dim(), 4u);
}

TEST(Weyl, MinusculeEqualsIrreducible) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = build_sl(n + 1);
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    w[0] = 1;
    const WeylModule wm = weyl_module(g, 1, psi_of({{1, w}}));
    EXPECT_EQ(wm.module.dim(), static_cast<std::size_t>(n + 1));
    EXPECT_TRUE(is_irreducible(wm.module));
  }
}

TEST(Weyl, Sl3Examples) {
  const auto g = build_sl(3);
  EXPECT_EQ(weyl_module(g, 1, psi_of({{1, {1, 0}}})).module.dim(), 3u);
  const WeylModule adj = weyl_module(g, 1, psi_of({{1, {1, 1}}}));
  EXPECT_GE(adj.module.dim(), 8u);
  EXPECT_EQ(multiplicities(adj.module).at(psi_of({{1, {1, 1}}})), 1);
}

TEST(Weyl, HeadIsIrreducibleQuotient) {
  const auto g = build_sl(2);
  const PsiFunction p = psi_of({{1, {2}}});
  const FiniteModule w = weyl_module(g, 1, p).module;
  const FiniteModule h = head(w);
  EXPECT_EQ(h.dim(), 3u);
  EXPECT_TRUE(is_irreducible(h));
  const HwQuotient q = hw_quotient_check(h);
  EXPECT_EQ(q.psi, p);
  EXPECT_EQ(q.rank, h.dim());
}

TEST(Weyl, HwQuotientOfWeylIsIdentityRank) {
  const auto g = build_sl(2);
  const FiniteModule w = weyl_module(g, 1, psi_of({{1, {1}}, {2, {1}}})).module;
  const HwQuotient q = hw_quotient_check(w);
  EXPECT_EQ(q.rank, w.dim());
}

TEST(Weyl, BudgetFromEnvironment) {
  const auto g = build_sl(2);
  EnvGuard env("EMA_WEYL_MAX_DIM", "4");
  EXPECT_EQ(weyl_max_dim(), 4u);
  EXPECT_THROW(weyl_module(g, 1, psi_of({{1, {3}}})), BudgetExceeded);
  try {
    weyl_module(g, 1, psi_of({{1, {3}}}));
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.required, e.cap);
    EXPECT_EQ(e.cap, 4u);
  }
}

TEST(Weyl, BadBudgetIsInputError) {
  EnvGuard env("EMA_WEYL_MAX_DIM", "lots");
  EXPECT_THROW(weyl_max_dim(), InputError);
}

TEST(TwistedWeyl, Sl2Examples) {
  const auto grp = sl2_sign();
  const PsiFunction pg = psi_gamma(*grp, psi_of({{1, {2}}}));
  const FiniteModule w1 = twisted_weyl(grp, pg, {pt(1)});
  const FiniteModule w2 = twisted_weyl(grp, pg, {pt(-1)});
  EXPECT_EQ(w1.dim(), 4u);
  EXPECT_EQ(w2.dim(), 4u);
  EXPECT_TRUE(iso_after_join(w1, w2));
  EXPECT_TRUE(check_choice_independence(grp, pg));
}

TEST(TwistedWeyl, Sl3FlipExample) {
  const auto grp = sl3_flip();
  const PsiFunction pg = psi_gamma(*grp, psi_of({{1, {1, 0}}}));
  EXPECT_EQ(twisted_weyl(grp, pg).dim(), 3u);
  EXPECT_TRUE(check_choice_independence(grp, pg));
}

TEST(TwistedWeyl, GammaTwist) {
  EXPECT_TRUE(check_gamma_twist(sl2_sign(), psi_of({{1, {2}}}), 1));
  EXPECT_TRUE(check_gamma_twist(sl3_flip(), psi_of({{1, {1, 0}}}), 1));
  EXPECT_TRUE(check_gamma_twist(sl3_flip(), psi_of({{1, {0, 1}}}), 1));
}

TEST(TwistedWeyl, UntwistGivesLocalWeyl) {
  for (const auto& grp : {sl2_sign(), sl3_flip()}) {
    const int r = grp->g().rank();
    std::vector<int> w(static_cast<std::size_t>(r), 0);
    w[0] = 1;
    const PsiFunction px = psi_of({{1, w}});
    const FiniteModule wg = twisted_weyl(grp, psi_gamma(*grp, px), {pt(1)});
    const FiniteModule u = untwist(wg, {pt(1)});
    EXPECT_TRUE(iso_after_join(u, weyl_module(grp->g_ptr(), 1, px).module));
  }
}

TEST(TwistedWeyl, TensorProducts) {
  const auto grp = sl2_sign();
  const auto eq = [&](const PsiFunction& p) { return psi_gamma(*grp, p); };
  const TensorReport r = tensor_check(grp, eq(psi_of({{1, {1}}})), eq(psi_of({{2, {1}}})));
  EXPECT_EQ(r.dim_sum, 4u);
  EXPECT_EQ(r.dim_tensor, 4u);
  EXPECT_TRUE(r.iso);
  const TensorReport r2 = tensor_check(grp, eq(psi_of({{1, {2}}})), eq(psi_of({{2, {1}}})));
  EXPECT_EQ(r2.dim_sum, 8u);
  EXPECT_TRUE(r2.iso);
  const TensorReport r3 = tensor_check(grp, eq(psi_of({{1, {2}}})), PsiFunction{});
  EXPECT_EQ(r3.dim_sum, 4u);
  EXPECT_TRUE(r3.iso);
}
