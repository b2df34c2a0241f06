#include <benchmark/benchmark.h>

#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"
#include "qcorr/experiment.hpp"
#include "qcorr/filtering.hpp"

using namespace qcorr;

namespace {

DensityMatrix family_state(double tau) {
    return make_x_state(evolve_reduced_family(0.0, 0.5, tau));
}

void BM_LindbladRhs(benchmark::State& state) {
    const DensityMatrix rho = werner_state(0.4);
    SystemParams sp;
    sp.k = 0.5;
    sp.V = 3.0;
    sp.omega1 = sp.omega2 = 5.0;
    for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(rho, sp));
}
BENCHMARK(BM_LindbladRhs);

void BM_EvolveNumericUnitTime(benchmark::State& state) {
    const DensityMatrix rho = werner_state(0.4);
    SystemParams sp;
    sp.k = 0.5;
    sp.V = 3.0;
    sp.omega1 = sp.omega2 = 5.0;
    const auto grid = uniform_grid(1.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_numeric(rho, sp, grid, 1e-3));
}
BENCHMARK(BM_EvolveNumericUnitTime);

void BM_EvolveAnalyticX(benchmark::State& state) {
    XParams x;
    x.a = 0.4;
    x.b = x.c = 0.25;
    x.d = 0.1;
    x.z = Complex{0.1, 0.05};
    x.w = Complex{0.05, 0.0};
    SystemParams sp;
    sp.k = 0.5;
    sp.V = 3.0;
    sp.omega1 = sp.omega2 = 5.0;
    double tau = 0.0;
    for (auto _ : state) {
        tau += 1e-6;
        benchmark::DoNotOptimize(evolve_analytic_x(x, sp, tau));
    }
}
BENCHMARK(BM_EvolveAnalyticX);

void BM_CorrelationReport(benchmark::State& state) {
    const DensityMatrix rho = family_state(3.0);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_report(rho));
}
BENCHMARK(BM_CorrelationReport);

void BM_HiddenMeasures(benchmark::State& state) {
    const DensityMatrix rho = family_state(3.0);
    for (auto _ : state) benchmark::DoNotOptimize(hidden_measures(rho));
}
BENCHMARK(BM_HiddenMeasures);

void BM_NormalFormFilters(benchmark::State& state) {
    const DensityMatrix rho = family_state(6.0);
    for (auto _ : state) benchmark::DoNotOptimize(compute_normal_form_filters(rho));
}
BENCHMARK(BM_NormalFormFilters);

void BM_FamilyScanPoint(benchmark::State& state) {
    for (auto _ : state) {
        const XParams x = evolve_reduced_family(0.0, 0.5, 3.0);
        const DensityMatrix rho = make_x_state(x);
        benchmark::DoNotOptimize(correlation_report(rho));
        benchmark::DoNotOptimize(hidden_from_nu(x_family_nu_spectrum(x)));
    }
}
BENCHMARK(BM_FamilyScanPoint);

}  // namespace

BENCHMARK_MAIN();
