/** \file evspec_bench.cpp
 *  \brief Microbenchmarks of the hot paths: sub-level volumes, the fiber
 *         eigensolver, the Abel pair, heat integrals, duality minimization,
 *         and trace sums.
 */

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "evspec/polygon_recon.hpp"
#include "evspec/polytope.hpp"
#include "evspec/reduced_symbol.hpp"
#include "evspec/s2_inverse.hpp"
#include "evspec/schrodinger_inverse.hpp"
#include "evspec/spectra.hpp"
#include "evspec/wps.hpp"

namespace {

evspec::ReducedSymbol round_symbol() {
    return evspec::toric_reduced_symbol(
        evspec::SymplecticPotential::canonical(evspec::LabeledPolytope::interval()), {1.0});
}

void SublevelVolume(benchmark::State& state) {
    const auto sym = round_symbol();
    evspec::QuadratureSpec spec;
    spec.resolution = static_cast<int>(state.range());
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::sublevel_volume(sym, 4.0, spec));
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(SublevelVolume)->RangeMultiplier(2)->Range(1000, 8000)->Complexity();

void SphereSpectrum(benchmark::State& state) {
    const auto profile = evspec::S2MetricProfile::round();
    const int grid = static_cast<int>(state.range());
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::s2_spectrum(profile, 1.0, 0.01, 30, grid));
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(SphereSpectrum)->RangeMultiplier(2)->Range(1000, 8000)->Complexity();

void AbelRoundtrip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range());
    evspec::GridFunction f{0.0, 2.0 / static_cast<double>(n), std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        f.values[j] = 2.0 + std::cos(3.0 * (f.x0 + static_cast<double>(j) * f.dx));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::abel_invert(evspec::abel_forward(f)));
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(AbelRoundtrip)->RangeMultiplier(2)->Range(500, 8000)->Complexity();

void HeatIntegral(benchmark::State& state) {
    const auto pot =
        evspec::SymplecticPotential::canonical(evspec::LabeledPolytope::unit_simplex());
    const std::vector<double> u{1.0, 0.0};
    const double t = static_cast<double>(state.range());
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::heat_integral(pot, u, t));
    }
}
BENCHMARK(HeatIntegral)->RangeMultiplier(4)->Range(16, 16384);

void DualityForwardMin(benchmark::State& state) {
    evspec::AdmissiblePotential V;
    V.n = 1;
    V.value = [](std::span<const double> s) { return s[0] + s[0] * s[0]; };
    const std::vector<double> alpha{1.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::forward_min(V, alpha));
    }
}
BENCHMARK(DualityForwardMin);

void TraceSum(benchmark::State& state) {
    const evspec::WeightVector w({2, 3, 5});
    const std::vector<double> coeffs(evspec::isotropy_list(w).size(), 1.0);
    const auto N = static_cast<std::int64_t>(state.range());
    for (auto _ : state) {
        benchmark::DoNotOptimize(evspec::trace_sum(w, coeffs, N));
    }
}
BENCHMARK(TraceSum)->RangeMultiplier(4)->Range(1, 1024);

}  // namespace

BENCHMARK_MAIN();
