// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "qcc/crystal1d.hpp"
#include "qcc/crystal2d.hpp"
#include "qcc/disorder.hpp"

namespace {

qcc::CrystalChain fig2_cell() {
  qcc::CrystalChain cell;
  cell.elements = {qcc::JunctionSpec{1.0, 10.0}, qcc::Segment{qcc::wavelengths(0.1)}};
  return cell;
}

qcc::DisorderSpec fig5_spec(std::size_t realizations) {
  qcc::DisorderSpec spec;
  spec.base_chain = qcc::regular_chain(20, qcc::wavelengths(2.0), {1.0, 10.0});
  spec.n_realizations = realizations;
  spec.seed = 7;
  return spec;
}

void BM_BandStructureSerial(benchmark::State& state) {
  const auto grid = qcc::linspace(0.01, 3.0, static_cast<std::size_t>(state.range(0)));
  const auto cell = fig2_cell();
  for (auto _ : state) benchmark::DoNotOptimize(qcc::band_structure_serial(cell, grid));
}

void BM_BandStructureParallel(benchmark::State& state) {
  const auto grid = qcc::linspace(0.01, 3.0, static_cast<std::size_t>(state.range(0)));
  const auto cell = fig2_cell();
  for (auto _ : state) benchmark::DoNotOptimize(qcc::band_structure(cell, grid));
}

void BM_RefractionScanSerial(benchmark::State& state) {
  qcc::Interface iface;
  iface.cell.elements = {qcc::JunctionSpec{1.1, 0.8}, qcc::Segment{qcc::wavelengths(0.1)}};
  const auto omegas = qcc::linspace(2.9, 4.9, 8);
  const auto thetas = qcc::linspace(0.1, 1.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qcc::refraction_scan_serial(iface, omegas, thetas));
}

void BM_RefractionScanParallel(benchmark::State& state) {
  qcc::Interface iface;
  iface.cell.elements = {qcc::JunctionSpec{1.1, 0.8}, qcc::Segment{qcc::wavelengths(0.1)}};
  const auto omegas = qcc::linspace(2.9, 4.9, 8);
  const auto thetas = qcc::linspace(0.1, 1.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qcc::refraction_scan(iface, omegas, thetas));
}

void BM_EnsembleSerial(benchmark::State& state) {
  const auto spec = fig5_spec(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> omegas{0.9, 1.2};
  const std::vector<double> deltas{0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcc::ensemble_map_serial(spec, omegas, deltas, {}, {16, 0}));
  }
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto spec = fig5_spec(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> omegas{0.9, 1.2};
  const std::vector<double> deltas{0.15};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcc::ensemble_map(spec, omegas, deltas, {}, {16, 0}));
  }
}

}  // namespace

BENCHMARK(BM_BandStructureSerial)->Arg(4096);
BENCHMARK(BM_BandStructureParallel)->Arg(4096);
BENCHMARK(BM_RefractionScanSerial);
BENCHMARK(BM_RefractionScanParallel);
BENCHMARK(BM_EnsembleSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
