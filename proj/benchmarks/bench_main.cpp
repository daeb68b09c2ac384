#include <benchmark/benchmark.h>

#include "gmbif/bifurcation.hpp"

using namespace gmbif;

namespace {

Params cusp_base() {
  Params p{0.4, 0.5477, 0.0, 0.4};
  p.b = p.b_sn();
  return p;
}

const Params kCenter{0.4, 0.6, 0.0125, 0.4};

void BM_JetProduct(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Jet2 a = reciprocal(Jet2::constant(n, 1.0) - Jet2::x(n) - 0.5 * Jet2::y(n));
  const Jet2 b = power(Jet2::constant(n, 2.0) + Jet2::y(n), 3);
  for (auto _ : st) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(BM_JetProduct)->DenseRange(5, 11, 2);

void BM_Expansion(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(expand_gm_field(kCenter, {0.15, 0.09}, n));
}
BENCHMARK(BM_Expansion)->DenseRange(5, 11, 2);

void BM_CuspPipeline(benchmark::State& st) {
  const Params p = cusp_base();
  CuspOptions o;
  o.order = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(cusp_report(p, o));
}
BENCHMARK(BM_CuspPipeline)->Arg(5)->Arg(6)->Arg(8);

void BM_UnfoldingChain(benchmark::State& st) {
  const Params p = cusp_base();
  for (auto _ : st) benchmark::DoNotOptimize(unfolding_chain(p, {1e-4, -1e-5, 2e-4}));
}
BENCHMARK(BM_UnfoldingChain);

void BM_UnfoldingJacobian(benchmark::State& st) {
  const Params p = cusp_base();
  for (auto _ : st) benchmark::DoNotOptimize(unfolding_jacobian(p));
}
BENCHMARK(BM_UnfoldingJacobian);

void BM_Integrate(benchmark::State& st) {
  const double tol = std::pow(10.0, -static_cast<double>(st.range(0)));
  std::size_t steps = 0;
  for (auto _ : st) {
    const auto tr = integrate(kCenter, {0.16, 0.09}, 200.0, tol);
    steps = tr.stats.steps;
    benchmark::DoNotOptimize(tr);
  }
  st.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_Integrate)->Arg(6)->Arg(9)->Arg(12);

void BM_ReturnMap(benchmark::State& st) {
  const Section sec = hopf_section(kCenter);
  for (auto _ : st) benchmark::DoNotOptimize(return_map(kCenter, sec, 0.01, {}));
}
BENCHMARK(BM_ReturnMap);

void BM_Classify(benchmark::State& st) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  for (auto _ : st) benchmark::DoNotOptimize(classify_all(p));
}
BENCHMARK(BM_Classify);

void BM_Scan(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ParamBox box{{0.4, 0.4, 1}, {0.6, 0.6, 1}, {0.001, 0.03, n}, {0.3, 0.5, n}};
  for (auto _ : st) benchmark::DoNotOptimize(scan_bifurcation_set(box));
  st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_Scan)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
