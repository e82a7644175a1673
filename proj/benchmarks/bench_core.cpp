#include <benchmark/benchmark.h>

#include <numbers>

#include "vandcond/bounds.hpp"
#include "vandcond/cauchy_inverse.hpp"
#include "vandcond/knots.hpp"
#include "vandcond/matrix.hpp"
#include "vandcond/spectral.hpp"

using namespace vandcond;

static void BM_SingularValues(benchmark::State& state) {
  const DenseMatrix v = vandermonde(quasi_cyclic(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(v));
}
BENCHMARK(BM_SingularValues)->Arg(48)->Arg(96)->Arg(192);

static void BM_CauchyInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const KnotVector s = van_der_corput(n);
  const cplx f = std::polar(1.0, 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(vandermonde_inverse_via_cv(s, f, InverseVariant::DerivativeCorrected));
}
BENCHMARK(BM_CauchyInverse)->Arg(32)->Arg(128);

static void BM_Genp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(genp_residual_experiment(n, 10, 1));
}
BENCHMARK(BM_Genp)->Arg(64)->Arg(256);

static void BM_ArcSearch(benchmark::State& state) {
  const KnotVector s = quasi_cyclic(static_cast<std::size_t>(state.range(0)));
  const double etas[] = {1.1, 1.2, 1.5};
  const cplx f = max_abs_on_circle(s, default_circle_grid(s.size())).f_star;
  for (auto _ : state) benchmark::DoNotOptimize(best_arc_search(s, f, etas));
}
BENCHMARK(BM_ArcSearch)->Arg(96)->Arg(384);
BENCHMARK_MAIN();
