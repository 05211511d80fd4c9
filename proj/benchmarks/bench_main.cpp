#include <benchmark/benchmark.h>

#include "conifold/barnes.hpp"
#include "conifold/disp.hpp"
#include "conifold/hirota.hpp"
#include "conifold/lattice.hpp"
#include "conifold/series.hpp"

using namespace conifold;

static void BM_LogG_double(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(barnes::log_G(cplx(0.3, 0.4), cplx(0.1, 0.1), cplx(1.0)));
}
BENCHMARK(BM_LogG_double);

static void BM_LogG_quad(benchmark::State& st) {
  cquad t(quad(3) / 10, quad(4) / 10), l(quad(1) / 10, quad(1) / 10);
  for (auto _ : st) benchmark::DoNotOptimize(barnes::log_G(t, l, cquad(1)));
}
BENCHMARK(BM_LogG_quad)->Unit(benchmark::kMillisecond);

static hirota::TruncatedSeries dense(const hirota::SeriesLayout& L) {
  using hirota::TruncatedSeries;
  auto f = TruncatedSeries::constant(L, 1.0);
  for (int v = 0; v < L.num_vars(); ++v) f += TruncatedSeries::variable(L, v) * cplx(0.1 * (v + 1), 0.05);
  return f * f * f;
}

static void BM_SeriesMultiply(benchmark::State& st) {
  hirota::SeriesLayout L{3, static_cast<int>(st.range(0)), static_cast<int>(st.range(0))};
  auto f = dense(L), g = dense(L);
  for (auto _ : st) benchmark::DoNotOptimize(f * g);
  st.counters["terms"] = static_cast<double>(f.terms().size());
}
BENCHMARK(BM_SeriesMultiply)->Arg(3)->Arg(5)->Arg(7);

static void BM_MiwaShift(benchmark::State& st) {
  hirota::SeriesLayout L{3, 5, 5};
  auto f = dense(L);
  for (auto _ : st) benchmark::DoNotOptimize(hirota::miwa_shift(f, hirota::Direction::z, cplx(0, 1)));
}
BENCHMARK(BM_MiwaShift);

static void BM_HirotaResidual(benchmark::State& st) {
  hirota::SeriesLayout L{3, 5, 5};
  auto s = lattice::random_state(13, 0.3, 1);
  auto base = hirota::triple_from_lattice(s.a, s.b, L);
  auto t = hirota::first_order_triple(base, hirota::extract_time_derivatives(base));
  for (auto _ : st) benchmark::DoNotOptimize(hirota::hirota_residual(t, hirota::HirotaEquation::b, 1));
}
BENCHMARK(BM_HirotaResidual);

static void BM_RK4Step(benchmark::State& st) {
  auto s = lattice::random_state(static_cast<std::size_t>(st.range(0)), 0.2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(lattice::rk4_step(s, 1e-3));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_RK4Step)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_FlowRhs(benchmark::State& st) {
  const double L = 6.283185307179586;
  disp::Fields f{disp::GridFunction::from_function(256, L, [](double x) { return cplx(1.0 + 0.2 * std::cos(x)); }),
                 disp::GridFunction::from_function(256, L, [](double x) { return cplx(0.1 * std::sin(x)); })};
  const int j = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(disp::flow_rhs(f, j, disp::Direction::z));
}
BENCHMARK(BM_FlowRhs)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
