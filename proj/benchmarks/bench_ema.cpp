#include <benchmark/benchmark.h>

#include <random>

#include "ema/ema.hpp"
#include "ema/homology.hpp"
#include "ema/weyl.hpp"

using namespace ema;

namespace {

Point pt(Cyclo c) { return Point({c}); }

std::shared_ptr<const GammaGroup> sl2_sign() {
  return std::make_shared<const GammaGroup>(build_sl(2), 1,
                                            std::vector<GammaGenerator>{{2, {1}, DiagramSymmetry::identity(1), {1}}});
}

PsiFunction one_point(int lambda) {
  PsiFunction p;
  p.set(pt(1), Weight({lambda}));
  return p;
}

void BM_CycloMul(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Cyclo a = Cyclo::zeta(m) + Cyclo(Rational(3) / Rational(7)), b = Cyclo::zeta(m, 2) - Cyclo(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMul)->Arg(4)->Arg(12)->Arg(60);

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-5, 5);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Cyclo(d(rng));
  for (auto _ : state) benchmark::DoNotOptimize(rank(a));
}
BENCHMARK(BM_Rank)->Arg(16)->Arg(48);

void BM_Freudenthal(benchmark::State& state) {
  const RootDatum rd(3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rd.freudenthal_mults(Weight({k, 1, k})));
}
BENCHMARK(BM_Freudenthal)->Arg(1)->Arg(3);

void BM_EvGammaIso(benchmark::State& state) {
  const auto grp = sl2_sign();
  EtaFunction eta;
  eta.set(pt(1), static_cast<int>(state.range(0)));
  eta.set(pt(2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ev_gamma_iso(grp, eta));
}
BENCHMARK(BM_EvGammaIso)->Arg(1)->Arg(3);

void BM_WeylSl2(benchmark::State& state) {
  const auto g = build_sl(2);
  WeylOptions o;
  o.certify = false;
  const PsiFunction p = one_point(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_module(g, 1, p, o));
}
BENCHMARK(BM_WeylSl2)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Battery(benchmark::State& state) {
  const auto grp = sl2_sign();
  const PsiFunction pg = psi_gamma(*grp, one_point(2));
  const FiniteModule w = twisted_weyl(grp, pg);
  for (auto _ : state) benchmark::DoNotOptimize(characterization_battery(w, pg, 2, 3));
}
BENCHMARK(BM_Battery)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
