#include <benchmark/benchmark.h>

#include "quantlab/coherent_transform.hpp"
#include "quantlab/kahler_geom.hpp"
#include "quantlab/psh_analysis.hpp"
#include "quantlab/reduction.hpp"
#include "quantlab/stratum_density.hpp"

using namespace quantlab;

static void BM_Su2Irrep(benchmark::State& state) {
  const auto m = LieModel::su2();
  const auto p = Irrep::make(m, {static_cast<int>(state.range(0))});
  sampling::Rng rng(1);
  const CMat g = sampling::complex_point(m, rng, 1.0).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(p(g));
}
BENCHMARK(BM_Su2Irrep)->Arg(1)->Arg(4)->Arg(8);

static void BM_ThetaSpectrum(benchmark::State& state) {
  const auto m = LieModel::su2();
  const auto k = psh::InvariantPotential::log_eta(m);
  const Vec t = Vec::Constant(1, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(psh::theta_spectrum(m, k, t));
}
BENCHMARK(BM_ThetaSpectrum);

static void BM_ThetaOracle(benchmark::State& state) {
  const auto m = LieModel::su2();
  const auto k = psh::InvariantPotential::log_eta(m);
  const Vec t = Vec::Constant(1, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(psh::theta_matrix_oracle(m, k, t));
}
BENCHMARK(BM_ThetaOracle);

static void BM_Hl2Gram(benchmark::State& state) {
  const auto m = LieModel::su2();
  const double cutoff = static_cast<double>(state.range(0)) / 2.0;
  const auto irreps = Irrep::up_to(m, cutoff);
  const auto table = transform::SigmaTable::build(m, irreps, 40);
  std::vector<double> scales;
  for (const auto& p : irreps) scales.push_back(1.0 / std::sqrt(table.at(p)));
  const auto rule = transform::algebra_rule(m, cutoff, 1);
  for (auto _ : state) benchmark::DoNotOptimize(transform::hl2_gram(m, irreps, scales, rule));
}
BENCHMARK(BM_Hl2Gram)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_QrSides(benchmark::State& state) {
  const auto m = LieModel::su2();
  for (auto _ : state) benchmark::DoNotOptimize(reduction::qr_sides(m, 2.0, 1, 40));
}
BENCHMARK(BM_QrSides)->Unit(benchmark::kMillisecond);

static void BM_TorusRepresentative(benchmark::State& state) {
  const auto m = LieModel::su2();
  sampling::Rng rng(5);
  const GroupPoint k = sampling::group_point(m, rng);
  const kahler::BasePoint p{GroupPoint{k.matrix * m.torus_point(Vec::Constant(1, 0.7)).matrix * k.matrix.adjoint()},
                            m.adjoint_action(k, m.embed_torus(Vec::Constant(1, 1.1)))};
  const auto z = reduction::ZeroSetPoint::make(m, p);
  for (auto _ : state) benchmark::DoNotOptimize(reduction::torus_representative(m, z));
}
BENCHMARK(BM_TorusRepresentative);

static void BM_RemovalError(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(stratum::removal_error(n, std::exp(2.0), stratum::Removed::point, 0.5));
}
BENCHMARK(BM_RemovalError)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
