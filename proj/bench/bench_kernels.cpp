// Serial reference kernel against the frame-parallel kernel on the same
// request. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "sct/chirplet.hpp"
#include "sct/reassign.hpp"
#include "sct/window.hpp"

using namespace sct;

namespace {

Signal noise(int n, double fs) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    std::vector<cdouble> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = cdouble(N(rng), N(rng));
    return Signal(x, fs);
}

// Arguments: number of samples, M.
template <bool Parallel>
void BM_Transform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double fs = 100.0;
    const Signal s = noise(n, fs);
    const TfcGrid g = grid_from_resolution(0.5 / static_cast<double>(state.range(1)), n, fs);
    const WindowBank b = make_window_bank(gaussian_window(0, 8.0), s.dt_s());
    for (auto _ : state) {
        TfcTensor T = Parallel ? chirplet_transform(s, b.h, g) : chirplet_transform_reference(s, b.h, g);
        benchmark::DoNotOptimize(T.values.data().data());
    }
    state.counters["entries/s"] = benchmark::Counter(
        static_cast<double>(g.n_chirp()) * g.n_freq() * g.n_time * static_cast<double>(state.iterations()),
        benchmark::Counter::kIsRate);
}

void BM_Sct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Signal s = noise(n, 100.0);
    const TfcGrid g = grid_from_resolution(0.5 / static_cast<double>(state.range(1)), n, 100.0);
    const WindowBank b = make_window_bank(gaussian_window(2, 8.0), s.dt_s());
    for (auto _ : state) {
        SctResult r = synchrosqueezed_chirplet_transform(s, b, g);
        benchmark::DoNotOptimize(r.squeeze.S.values.data().data());
    }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_Transform, false)->Name("transform/reference")->Args({200, 25})->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Transform, true)->Name("transform/parallel")->Args({200, 25})->Args({400, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sct)->Args({400, 50})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
