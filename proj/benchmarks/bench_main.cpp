#include <benchmark/benchmark.h>

#include <random>

#include "hz/curve/box.hpp"
#include "hz/curve/corpus.hpp"
#include "hz/spectral/pages.hpp"
#include "hz/spectral/random.hpp"
#include "hz/torus/orbits.hpp"

namespace {

void BM_PoincareReturn(benchmark::State& state) {
    const hz::torus::MagneticField field(10.0, {{1, 1, 0.5, 0.0}, {1, -1, 0.5, 0.0}});
    const double energy = 0.05;
    double q = 0.1;
    for (auto _ : state) {
        auto ret = hz::torus::poincare_return(field, energy, q, 0.3);
        benchmark::DoNotOptimize(ret);
        q = ret.image[0];
    }
}
BENCHMARK(BM_PoincareReturn);

void BM_OrbitSearch(benchmark::State& state) {
    const hz::torus::MagneticField field(10.0, {{1, 0, 1.0, 0.0}});
    hz::torus::OrbitFinderOptions opt;
    opt.grid_density = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto report = hz::torus::find_periodic_orbits(field, 0.01, opt);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_OrbitSearch)->Arg(4)->Arg(8);

void BM_BoxCurve(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto curve = hz::curve::random_closed_curve(rng, 2);
    for (auto _ : state) {
        auto box = hz::curve::build_box_curve(curve);
        benchmark::DoNotOptimize(box);
    }
}
BENCHMARK(BM_BoxCurve);

void BM_SpectralPages(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto rc = hz::spectral::random_filtered_complex(
        rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto pages = hz::spectral::compute_pages(rc.complex);
        benchmark::DoNotOptimize(pages);
    }
}
BENCHMARK(BM_SpectralPages)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
