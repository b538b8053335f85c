// Serial reference vs OpenMP sweeps. Arg(0) is the serial kernel, Arg(n) uses n workers.

#include "rncx/fixtures.hpp"
#include "rncx/sweep.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace fx = rncx::fixtures;

static void net_equivalence(benchmark::State &state)
{
    const fx::NetFixture f = fx::p_then_q_net();
    const rncx::Automaton a = fx::dfa_p_then_q();
    const int jobs = static_cast<int>(state.range(0));
    rncx::SweepOptions opt{7, 2000, 11, std::max(jobs, 1)};
    for (auto _ : state) {
        const rncx::NetEquivalence e = jobs == 0 ? rncx::net_equivalent_serial(f.net, f.alphabet, a, opt)
                                                 : rncx::net_equivalent(f.net, f.alphabet, a, opt);
        benchmark::DoNotOptimize(e.words_checked);
    }
}
BENCHMARK(net_equivalence)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void positioning(benchmark::State &state)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0), V(-3.0, 3.0);
    std::vector<double> w, v;
    for (int t = 0; t < 20000; ++t) {
        w.push_back(10.0 - 9.0 * U(rng));
        v.push_back(V(rng));
    }
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const rncx::PositioningSweep s = jobs == 0 ? rncx::positioning_sweep_serial(w, v, 1e-7)
                                                   : rncx::positioning_sweep(w, v, 1e-7, jobs);
        benchmark::DoNotOptimize(s.violations);
    }
}
BENCHMARK(positioning)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
