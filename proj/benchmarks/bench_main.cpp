#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "tritronquee/bvp_solver.hpp"

using namespace tritronquee;

static void BM_MakeGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_grid(n));
  }
}
BENCHMARK(BM_MakeGrid)->Arg(20)->Arg(64)->Arg(256);

static void BM_ToCoeffs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<cplx> values(n + 1);
  for (int j = 0; j <= n; ++j) values[j] = std::exp(cplx(chebyshev_points(n)[j], 0.5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_coeffs(values));
  }
}
BENCHMARK(BM_ToCoeffs)->Arg(64)->Arg(256);

static void BM_LuSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (auto& e : a.data()) e = {u(rng), u(rng)};
  for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
  std::vector<cplx> rhs(n, cplx(1.0, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lu_solve(a, rhs));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LuSolve)->Arg(100)->Arg(300)->Arg(540)->Complexity(benchmark::oNCubed);

static void BM_Assemble(benchmark::State& state) {
  LineSpec line;
  line.sigma = Sign::minus;
  DomainLayout layout;
  layout.n_middle = {static_cast<int>(state.range(0))};
  const Discretization disc(line, layout);
  const auto iterate = disc.initial_iterate(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(disc.assemble(iterate));
  }
}
BENCHMARK(BM_Assemble)->Arg(64)->Arg(256);

static void BM_NewtonImaginaryAxis(benchmark::State& state) {
  LineSpec line;
  line.sigma = Sign::minus;
  DomainLayout layout;
  layout.n_middle = {static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_solve(line, layout));
  }
}
BENCHMARK(BM_NewtonImaginaryAxis)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_NewtonNearStokes(benchmark::State& state) {
  LineSpec line;
  line.sigma = Sign::minus;
  line.a = std::polar(1.0, 0.8 * std::numbers::pi - 0.05);
  DomainLayout layout;
  layout.n_end_right = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_solve(line, layout));
  }
}
BENCHMARK(BM_NewtonNearStokes)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
