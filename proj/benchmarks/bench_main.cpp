#include <benchmark/benchmark.h>

#include "hypbarrier/barriers.hpp"
#include "hypbarrier/certificates.hpp"
#include "hypbarrier/checker.hpp"
#include "hypbarrier/domains.hpp"
#include "hypbarrier/hypgeo.hpp"

using namespace hypbarrier;

namespace {

geo::Point at(double angle, double r) { return geo::exp(geo::direction(geo::Point(), angle) * r); }

void BM_Dist(benchmark::State& state) {
  const geo::Point p = at(0.3, 1.0), q = at(2.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geo::dist(p, q));
}
BENCHMARK(BM_Dist)->Arg(1)->Arg(10)->Arg(30);

void BM_ExpLog(benchmark::State& state) {
  const geo::Point p = at(0.3, 1.0);
  const geo::Tangent v = geo::direction(p, 1.1) * 2.5;
  for (auto _ : state) benchmark::DoNotOptimize(geo::log(p, geo::exp(v)));
}
BENCHMARK(BM_ExpLog);

void BM_PolygonMargin(benchmark::State& state) {
  const auto d = dom::DomainSpec::regular_polygon(geo::Point(), static_cast<int>(state.range(0)), 2.0);
  const geo::Point p = at(0.7, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dom::margin(d, p));
}
BENCHMARK(BM_PolygonMargin)->Arg(3)->Arg(12)->Arg(48);

void BM_LogBarrierJet(benchmark::State& state) {
  const auto F = bar::make_log_barrier(dom::DomainSpec::equilateral_triangle(geo::Point(), 3.0));
  const geo::Geodesic g(geo::direction(at(0.2, 0.1), 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(F.jet(g, 0.05));
}
BENCHMARK(BM_LogBarrierJet);

void BM_FiniteDifference(benchmark::State& state) {
  const auto F = bar::make_log_barrier(dom::DomainSpec::equilateral_triangle(geo::Point(), 3.0));
  const auto r = bar::restrict(F, geo::Geodesic(geo::direction(at(0.2, 0.1), 0.9)));
  for (auto _ : state) benchmark::DoNotOptimize(r.finite_difference(0.05));
}
BENCHMARK(BM_FiniteDifference);

void BM_EstimateSigma(benchmark::State& state) {
  const auto F = bar::make_log_barrier(dom::DomainSpec::ball(geo::Point(), 2.0));
  chk::SamplePlan plan;
  plan.point_count = static_cast<std::size_t>(state.range(0));
  plan.geodesics_per_point = 8;
  plan.grid_per_geodesic = 16;
  for (auto _ : state) benchmark::DoNotOptimize(chk::estimate_sigma(F, plan));
}
BENCHMARK(BM_EstimateSigma)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CertifyPolygon(benchmark::State& state) {
  int n = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cert::certify_polygon(n, 40.0));
    n = n == 200 ? 3 : n + 1;
  }
}
BENCHMARK(BM_CertifyPolygon);

}  // namespace

BENCHMARK_MAIN();
