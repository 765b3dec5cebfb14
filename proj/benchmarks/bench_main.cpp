#include <benchmark/benchmark.h>

#include "sadovskii/energy.hpp"
#include "sadovskii/evolution.hpp"
#include "sadovskii/lamb.hpp"
#include "sadovskii/particles.hpp"
#include "sadovskii/steiner.hpp"
#include "sadovskii/stream_operator.hpp"

using namespace sadovskii;

namespace {

GridField lamb_field(int ny) {
  const LambParams lp;
  return lamb_dipole(lp, lamb_grid(lp, 2 * ny, ny)).field;
}

void BM_StreamFft(benchmark::State& state) {
  const GridField f = lamb_field(static_cast<int>(state.range(0)));
  const StreamOperator op(f.spec());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(f));
}
BENCHMARK(BM_StreamFft)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_StreamDirect(benchmark::State& state) {
  const GridField f = lamb_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stream_direct(f));
}
BENCHMARK(BM_StreamDirect)->RangeMultiplier(2)->Range(16, 32)->Unit(benchmark::kMillisecond);

void BM_StreamOperatorSetup(benchmark::State& state) {
  const GridSpec g = lamb_field(static_cast<int>(state.range(0))).spec();
  for (auto _ : state) benchmark::DoNotOptimize(StreamOperator(g));
}
BENCHMARK(BM_StreamOperatorSetup)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_KineticEnergy(benchmark::State& state) {
  const GridField f = lamb_field(static_cast<int>(state.range(0)));
  const StreamOperator op(f.spec());
  for (auto _ : state) benchmark::DoNotOptimize(kinetic_energy(op, f));
}
BENCHMARK(BM_KineticEnergy)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_Steiner(benchmark::State& state) {
  const GridField f = lamb_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(steiner_symmetrize(f));
}
BENCHMARK(BM_Steiner)->Arg(96)->Unit(benchmark::kMicrosecond);

void BM_ParticleVelocities(benchmark::State& state) {
  const ParticleEnsemble e = discretize(lamb_field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(particle_velocities(e));
  state.counters["particles"] = static_cast<double>(e.size());
}
BENCHMARK(BM_ParticleVelocities)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Rk4Step(benchmark::State& state) {
  const ParticleEnsemble e = discretize(lamb_field(24));
  const double dt = suggested_dt(e);
  for (auto _ : state) benchmark::DoNotOptimize(step(e, dt));
}
BENCHMARK(BM_Rk4Step)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
