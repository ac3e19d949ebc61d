#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "epi/likelihood.hpp"
#include "epi/mcmc.hpp"
#include "epi/model.hpp"
#include "epi/policy.hpp"
#include "epi/schedule.hpp"
#include "epi/simulate.hpp"

namespace {

epi::ModelSpec make_spec(epi::ModelFamily family) {
    epi::ModelSpec spec;
    spec.family = family;
    spec.refined = true;
    spec.population = 1e6;
    return spec;
}

epi::DiseaseParams make_params() {
    epi::DiseaseParams params;
    params.r0 = 3.0;
    params.gamma = 0.1;
    params.iota = 1e-4;
    return params;
}

void bm_derivatives(benchmark::State& state) {
    const auto spec = make_spec(
        static_cast<epi::ModelFamily>(state.range(0)));
    const auto params = make_params();
    const auto y = epi::init_state(spec, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(epi::derivatives(spec, params, y, 0.2));
    }
}

void bm_simulate_year(benchmark::State& state) {
    const auto spec = make_spec(
        static_cast<epi::ModelFamily>(state.range(0)));
    const auto params = make_params();
    const auto schedule = epi::InterventionSchedule::constant(0.2, 365);
    for (auto _ : state) {
        benchmark::DoNotOptimize(epi::simulate(spec, params, schedule, 365));
    }
    state.SetItemsProcessed(state.iterations() * 365);
}

void bm_expected_counts(benchmark::State& state) {
    const auto spec = make_spec(epi::ModelFamily::SIR);
    const auto params = make_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            epi::expected_counts(spec, params, spec.population, 120));
    }
}

void bm_mcmc_iteration(benchmark::State& state) {
    // Sampler overhead alone: a trivial target isolates proposal + adapt cost.
    const epi::LogDensity target = [](std::span<const double> x) {
        return -0.5 * x[0] * x[0];
    };
    epi::McmcConfig config;
    config.chains = 1;
    config.iterations = 2000;
    config.burn_in = 500;
    const std::vector<double> init = {0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(epi::sample_adaptive_metropolis(target, init, config));
    }
    state.SetItemsProcessed(state.iterations() * config.iterations);
}

void bm_greedy_search(benchmark::State& state) {
    const auto spec = make_spec(epi::ModelFamily::SIR);
    const auto params = make_params();
    epi::PolicySearchConfig config;
    config.horizon = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(epi::greedy_search(spec, params, config));
    }
}

} // namespace

BENCHMARK(bm_derivatives)
    ->Arg(static_cast<int>(epi::ModelFamily::SIR))
    ->Arg(static_cast<int>(epi::ModelFamily::SEIR))
    ->Arg(static_cast<int>(epi::ModelFamily::SEI3RD));
BENCHMARK(bm_simulate_year)
    ->Arg(static_cast<int>(epi::ModelFamily::SIR))
    ->Arg(static_cast<int>(epi::ModelFamily::SEIR))
    ->Arg(static_cast<int>(epi::ModelFamily::SEI3RD));
BENCHMARK(bm_expected_counts);
BENCHMARK(bm_mcmc_iteration)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_greedy_search)->Arg(182)->Arg(365)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
