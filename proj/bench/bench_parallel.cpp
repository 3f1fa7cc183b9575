#include <benchmark/benchmark.h>

#include "crlab/experiments.hpp"
#include "crlab/multipliers.hpp"
#include "crlab/random.hpp"

namespace {

struct PickFixture {
  crlab::FiniteKernelSpace space;
  crlab::MultiplierTable phi;
};

PickFixture make_fixture(std::size_t n) {
  crlab::Rng rng(7);
  auto space = crlab::drury_arveson_space(3, rng.ball_points(3, n, 0.9));
  std::vector<crlab::ComplexMatrix> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.complex_normal(3, 1));
  return {space, crlab::MultiplierTable(3, 1, std::move(v))};
}

void BM_PickParallel(benchmark::State& state) {
  const auto f = make_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crlab::pick_matrix(f.space, f.space, f.phi, 1.0));
}

void BM_PickSerial(benchmark::State& state) {
  const auto f = make_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crlab::pick_matrix_serial(f.space, f.space, f.phi, 1.0));
}

void run_suite(benchmark::State& state, bool serial) {
  crlab::ExperimentConfig c;
  c.command = "verify";
  c.target = "column-row";
  c.trials = static_cast<int>(state.range(0));
  c.serial = serial;
  for (auto _ : state) benchmark::DoNotOptimize(crlab::run_command(c));
}

void BM_TrialsParallel(benchmark::State& state) { run_suite(state, false); }
void BM_TrialsSerial(benchmark::State& state) { run_suite(state, true); }

}  // namespace

BENCHMARK(BM_PickParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PickSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TrialsParallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsSerial)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
