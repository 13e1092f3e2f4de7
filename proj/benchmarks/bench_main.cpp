#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include "phsim/beam.hpp"
#include "phsim/closed_loop.hpp"
#include "phsim/diff.hpp"
#include "phsim/plate.hpp"
#include "phsim/synthesis.hpp"
#include "phsim/variational.hpp"

namespace {

phsim::Field2D smooth_field(const phsim::Grid2D& grid) {
  phsim::Field2D f(grid);
  for (int j = 0; j < grid.n2; ++j) {
    for (int i = 0; i < grid.n1; ++i) {
      f(i, j) = std::sin(2.1 * grid.z1(i) + 0.3) * std::cos(1.7 * grid.z2(j));
    }
  }
  return f;
}

void BM_Diff2D(benchmark::State& state) {
  const phsim::Grid2D grid{static_cast<int>(state.range(0)),
                           static_cast<int>(state.range(0)), 1.0, 1.0};
  const phsim::Field2D f = smooth_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phsim::diff(f, phsim::MultiIndex{2, 2}));
  }
}
BENCHMARK(BM_Diff2D)->Arg(21)->Arg(41);

void BM_VarDerivPlate(benchmark::State& state) {
  const phsim::Grid2D grid{static_cast<int>(state.range(0)),
                           static_cast<int>(state.range(0)), 1.0, 1.0};
  const phsim::PlatePlant plant(grid, phsim::PlateParams{});
  const phsim::Field2D w = smooth_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(phsim::var_deriv_w_2d(plant.density(), w));
  }
}
BENCHMARK(BM_VarDerivPlate)->Arg(21)->Arg(41);

void BM_PlateForceApply(benchmark::State& state) {
  const phsim::Grid2D grid{static_cast<int>(state.range(0)),
                           static_cast<int>(state.range(0)), 1.0, 1.0};
  const phsim::PlatePlant plant(grid, phsim::PlateParams{});
  const Eigen::VectorXd w = smooth_field(grid).values();
  Eigen::VectorXd out(w.size());
  for (auto _ : state) {
    plant.core().force.apply(w.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_PlateForceApply)->Arg(21)->Arg(41);

void BM_PlateRk4Step(benchmark::State& state) {
  const phsim::Grid2D grid{static_cast<int>(state.range(0)),
                           static_cast<int>(state.range(0)), 1.0, 1.0};
  const phsim::PlatePlant plant(grid, phsim::PlateParams{});
  const phsim::PlateSynthesis syn = phsim::synthesize_plate_controller(
      plant, phsim::plate_default_gains(), phsim::PlateEquilibrium{});
  phsim::CoupledSystem system = phsim::make_closed_loop(plant, syn);
  const double dt = system.auto_dt(phsim::SimOptions{});
  for (auto _ : state) {
    system.step(dt);
  }
}
BENCHMARK(BM_PlateRk4Step)->Arg(21)->Arg(41);

void BM_BeamRk4Step(benchmark::State& state) {
  const phsim::Grid1D grid{static_cast<int>(state.range(0)), 1.0};
  const phsim::BeamPlant plant(grid, phsim::BeamParams{});
  const phsim::BeamSynthesis syn = phsim::synthesize_beam_controller(
      plant, phsim::beam_default_gains(), phsim::BeamEquilibrium{});
  phsim::CoupledSystem system = phsim::make_closed_loop(plant, syn);
  const double dt = system.auto_dt(phsim::SimOptions{});
  for (auto _ : state) {
    system.step(dt);
  }
}
BENCHMARK(BM_BeamRk4Step)->Arg(21)->Arg(41);

}  // namespace

BENCHMARK_MAIN();
