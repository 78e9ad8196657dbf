#include <benchmark/benchmark.h>

#include <random>

#include "mobles/agents.hpp"
#include "mobles/planner.hpp"

using namespace mobles;

namespace {

std::string map_path(const char* name) { return std::string(MOBLES_MAPS_DIR) + "/" + name + ".map"; }

void BM_InnerExtremeL1(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(m), p(m), out;
    std::vector<std::size_t> order;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        v[i] = u(gen);
        total += p[i] = u(gen);
    }
    for (auto& x : p) x /= total;
    for (auto _ : state) {
        inner_extreme_L1(v, p, 0.3, Direction::Max, out, order);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_InnerExtremeL1)->Arg(2)->Arg(5)->Arg(16);

// Warm-started planning of a model after 20 episodes of experience.
void BM_PlanAll(benchmark::State& state) {
    const auto maze = load_map_file(map_path("four_rooms"));
    AgentConfig cfg;
    cfg.kind = AgentKind::Mobles;
    ModelBasedAgent agent(cfg, maze, SensorMode::Two);
    Rng env = make_stream(1, Stream::Environment), act = make_stream(1, Stream::Agent);
    for (int ep = 1; ep <= 20; ++ep) agent.run_episode({&maze, SensorMode::Two, 2000}, env, act, ep);
    PlannerParams params;
    params.theta = theta_schedule(20);
    for (auto _ : state) {
        auto model = agent.full_model();
        plan_all(model, params, state.range(0) != 0);
        benchmark::DoNotOptimize(model.q.data().data());
    }
}
BENCHMARK(BM_PlanAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Episode(benchmark::State& state) {
    const auto maze = load_map_file(map_path("four_rooms"));
    AgentConfig cfg;
    cfg.kind = static_cast<AgentKind>(state.range(0));
    std::int64_t steps = 0;
    for (auto _ : state) {
        state.PauseTiming();
        ModelBasedAgent agent(cfg, maze, SensorMode::Two);
        Rng env = make_stream(2, Stream::Environment), act = make_stream(2, Stream::Agent);
        state.ResumeTiming();
        for (int ep = 1; ep <= 5; ++ep) steps += agent.run_episode({&maze, SensorMode::Two, 2000}, env, act, ep).steps;
    }
    state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Episode)
    ->Arg(static_cast<int>(AgentKind::Mobles))
    ->Arg(static_cast<int>(AgentKind::Mb))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
