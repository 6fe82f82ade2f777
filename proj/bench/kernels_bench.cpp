// Parallel kernels against their O(L^2) serial references.
//   ./mra_bench --benchmark_filter=align

#include <benchmark/benchmark.h>
#include <omp.h>

#include "mra/kernels.hpp"
#include "mra/model.hpp"
#include "mra/serial_kernels.hpp"

namespace {

using namespace mra;

struct Fixture {
    Signal x;
    MeasurementSet ms;
};

Fixture make(std::size_t L, long long n) {
    StreamSeed seed(2024);
    Engine e = seed.child(stream::signal).engine();
    Fixture f;
    f.x = sample_signal(L, e);
    f.ms = generate_mra(f.x, n, NoiseModel::plain(L, 4.0), seed);
    return f;
}

void args(benchmark::internal::Benchmark* b) {
    for (long long L : {64, 256, 1024}) {
        b->Args({L, 1000});
    }
}

void BM_align_parallel(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::align_shifts(f.x, f.ms.observations));
    }
    state.counters["threads"] = omp_get_max_threads();
}
BENCHMARK(BM_align_parallel)->Apply(args)->Unit(benchmark::kMillisecond);

void BM_align_serial(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::align_shifts(f.x, f.ms.observations));
    }
}
BENCHMARK(BM_align_serial)->Apply(args)->Unit(benchmark::kMillisecond);

void BM_em_step_parallel(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    const auto spectra = kernels::observation_spectra(f.ms.observations);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::em_step(spectra, f.x, f.ms.noise.sigma_sq, true));
    }
}
BENCHMARK(BM_em_step_parallel)->Apply(args)->Unit(benchmark::kMillisecond);

void BM_em_step_serial(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::em_step(f.ms.observations, f.x, f.ms.noise.sigma_sq, true));
    }
}
BENCHMARK(BM_em_step_serial)->Apply(args)->Unit(benchmark::kMillisecond);

std::vector<Signal> unit_net(std::size_t L, std::size_t count) {
    std::vector<Signal> net;
    Engine e = StreamSeed(7).engine();
    for (std::size_t i = 0; i < count; ++i) {
        Signal q = sample_signal(L, e);
        const double nq = norm(q.view());
        for (double& v : q) {
            v /= nq;
        }
        net.push_back(std::move(q));
    }
    return net;
}

void BM_net_scores_parallel(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    const auto net = unit_net(f.x.size(), 32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::net_scores(net, f.ms.observations, 0.9));
    }
}
BENCHMARK(BM_net_scores_parallel)->Args({16, 20000})->Args({256, 2000})->Unit(benchmark::kMillisecond);

void BM_net_scores_serial(benchmark::State& state) {
    const auto f = make(static_cast<std::size_t>(state.range(0)), state.range(1));
    const auto net = unit_net(f.x.size(), 32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::net_scores(net, f.ms.observations, 0.9));
    }
}
BENCHMARK(BM_net_scores_serial)->Args({16, 20000})->Args({256, 2000})->Unit(benchmark::kMillisecond);

void BM_mi_terms_parallel(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::mi_inner_terms(L, sigma_sq_from_alpha(L, 0.5), 500, StreamSeed(3)));
    }
}
BENCHMARK(BM_mi_terms_parallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_mi_terms_serial(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::mi_inner_terms(L, sigma_sq_from_alpha(L, 0.5), 500, StreamSeed(3)));
    }
}
BENCHMARK(BM_mi_terms_serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
