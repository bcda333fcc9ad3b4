#include <random>

#include <benchmark/benchmark.h>

#include "qca/qca.hpp"

using namespace qca;

namespace {

SpinorField random_field(int d, int n, int s) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  SpinorField f(d, n, s);
  for (Complex& c : f.data()) c = Complex(g(rng), g(rng));
  f.normalize();
  return f;
}

AutomatonModel model_for(int d) {
  return AutomatonModel::dirac(d, d == 3 ? Variant::APlus : (d == 2 ? Variant::A : Variant::Line), 0.1);
}

void BM_StepFft(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const AutomatonModel model = model_for(d);
  const SpinorField f = random_field(d, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(step(f, {model, 100, n}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.sites()));
}
BENCHMARK(BM_StepFft)->Args({1, 4096})->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_StepDirect(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const AutomatonModel model = model_for(d);
  const SpinorField f = random_field(d, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(step_direct(f, model));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.sites()));
}
BENCHMARK(BM_StepDirect)->Args({1, 4096})->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_Bloch(benchmark::State& state) {
  const AutomatonModel model = state.range(0) ? AutomatonModel::dirac(3, Variant::APlus, 0.1)
                                              : AutomatonModel::weyl(3, Variant::APlus);
  std::mt19937_64 rng(2);
  std::vector<WaveVector> ks;
  for (int i = 0; i < 1024; ++i) ks.push_back(random_in_zone(model.lattice(), rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bloch(model, ks[i++ & 1023]));
}
BENCHMARK(BM_Bloch)->Arg(0)->Arg(1);

void BM_GroupVelocity(benchmark::State& state) {
  const AutomatonModel model = AutomatonModel::dirac(3, Variant::APlus, 0.1);
  const VelocityMode mode = state.range(0) ? VelocityMode::Numeric : VelocityMode::Analytic;
  const WaveVector k(0.3, -0.2, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(group_velocity(model, k, mode));
}
BENCHMARK(BM_GroupVelocity)->Arg(0)->Arg(1);

void BM_Fidelity(benchmark::State& state) {
  const double m = 0.1;
  const KPacket packet = gaussian_kpacket(Vec3(m, 0, 0), m / 10, static_cast<int>(state.range(0)), 5.0, true);
  const std::vector<double> steps = log_spaced(1.0, 1e60, 121);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(packet, m, steps));
}
BENCHMARK(BM_Fidelity)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FidelityHorizon(benchmark::State& state) {
  const double m = 0.1;
  const KPacket packet = gaussian_kpacket(Vec3(m, 0, 0), m / 10, 20, 5.0, true);
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_horizon(packet, m));
}
BENCHMARK(BM_FidelityHorizon)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
