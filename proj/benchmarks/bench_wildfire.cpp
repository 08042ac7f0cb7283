#include <benchmark/benchmark.h>

#include "wildfire/cases.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/suppression.hpp"
#include "wildfire/surveillance.hpp"

using namespace wildfire;

namespace {

// Case 1 world after `minutes` unsuppressed steps.
struct Fixture {
  Scenario scenario = build_case(CaseDefinition::standard(1), 1);
  PropagationParams params = PropagationParams::defaults_for(scenario);
  KernelSet kernels{scenario, params};
  WorldState world = initial_world(scenario);
  BeliefState belief;

  explicit Fixture(int minutes) {
    Rng rng(3);
    for (int t = 0; t < minutes; ++t) world = step(world, nullptr, params, kernels, rng);
    belief.burning = world.burning;
    belief.uncertainty = uncertainty_growth(world.burning);
  }
};

void BM_PropagationStep(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  Rng rng(1);
  for (auto _ : state) {
    WorldState next = step(f.world, nullptr, f.params, f.kernels, rng);
    benchmark::DoNotOptimize(next);
  }
  state.counters["burning"] = burning_count(f.world.burning);
}
BENCHMARK(BM_PropagationStep)->Arg(10)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_InternalRollout(benchmark::State& state) {
  const Fixture f(40);
  const InternalModel model(f.scenario, f.params, 40);
  std::uint64_t key = 0;
  for (auto _ : state) {
    BoolGrid burning = f.belief.burning;
    FuelGrid fuel = model.uniform_fuel();
    model.advance(burning, fuel, static_cast<int>(state.range(0)), ++key);
    benchmark::DoNotOptimize(burning);
  }
}
BENCHMARK(BM_InternalRollout)->Arg(1)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_Ranging(benchmark::State& state) {
  const Fixture f(40);
  const int z = static_cast<int>(state.range(0));
  const SurveillanceState s{{4, 4, z}, {5, 5, z}};
  Rng rng(2);
  for (auto _ : state) {
    ObservationBatch obs = ranging(s, f.world.burning, rng);
    benchmark::DoNotOptimize(obs);
  }
}
BENCHMARK(BM_Ranging)->Arg(1)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_SurveillanceDecision(benchmark::State& state) {
  const Fixture f(40);
  MctsConfig cfg = default_surveillance_mcts();
  cfg.iteration_limit = static_cast<int>(state.range(0));
  const SurveillanceState s{{4, 4, 2}, {5, 5, 2}};
  Rng rng(4);
  for (auto _ : state) {
    auto a = plan_surveillance(f.belief, s, f.scenario, std::nullopt, SurveillanceModelKind::uncertainty, cfg, rng);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SurveillanceDecision)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SuppressionDecision(benchmark::State& state) {
  const Fixture f(40);
  SuppressPlannerConfig cfg;
  cfg.mcts.iteration_limit = static_cast<int>(state.range(0));
  Rng rng(5);
  for (auto _ : state) {
    auto a = plan_suppression(f.belief, f.scenario, cfg, rng);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SuppressionDecision)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
