#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "floorsp/descent.hpp"
#include "floorsp/dominant_dirs.hpp"
#include "floorsp/merge.hpp"
#include "floorsp/metrics.hpp"
#include "floorsp/oracle.hpp"
#include "floorsp/plan_io.hpp"
#include "floorsp/pipeline.hpp"
#include "floorsp/room_solver.hpp"

namespace {

floorsp::GroundTruthPlan scene(int grid, int rooms) {
  floorsp::SynthOptions o;
  o.seed = 3;
  o.rooms = rooms;
  o.grid = grid;
  o.non_manhattan_fraction = 0.25;
  return floorsp::synth_plan(o);
}

std::vector<floorsp::Loop> loops_of(const floorsp::GroundTruthPlan& plan) {
  std::vector<floorsp::Loop> out;
  for (const auto& room : plan.rooms) out.push_back(room.loop);
  return out;
}

void BM_TotalEnergy(benchmark::State& state) {
  const auto plan = scene(static_cast<int>(state.range(0)), 5);
  const auto maps = floorsp::render_bundle(plan);
  const floorsp::EnergyModel energy(maps, floorsp::Weights{});
  const auto loops = loops_of(plan);
  for (auto _ : state) benchmark::DoNotOptimize(energy.total_energy(loops).total());
}
BENCHMARK(BM_TotalEnergy)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_SolveRoom(benchmark::State& state) {
  const auto plan = scene(static_cast<int>(state.range(0)), 4);
  const auto maps = floorsp::render_bundle(plan);
  const floorsp::EnergyModel energy(maps, floorsp::Weights{});
  const floorsp::DirectionIntegral directions(maps.direction);
  const std::vector<std::optional<floorsp::Loop>> loops(maps.segments.size());
  const std::vector<std::vector<int>> frames(maps.segments.size());
  floorsp::RoomProblem p;
  p.energy = &energy;
  p.loops = loops;
  p.frames = frames;
  p.directions = &directions;
  p.global_frames = floorsp::extract_global_frames(maps.direction);
  for (auto _ : state) benchmark::DoNotOptimize(floorsp::solve_room(p));
}
BENCHMARK(BM_SolveRoom)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto maps = floorsp::render_bundle(scene(256, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(floorsp::reconstruct(maps));
}
BENCHMARK(BM_Reconstruct)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Merge(benchmark::State& state) {
  const auto loops = loops_of(scene(256, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(floorsp::merge(loops));
}
BENCHMARK(BM_Merge)->Arg(4)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_Evaluate(benchmark::State& state) {
  const auto f = floorsp::floorplan_from_plan(scene(256, 8));
  for (auto _ : state) benchmark::DoNotOptimize(floorsp::evaluate(f, f));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
