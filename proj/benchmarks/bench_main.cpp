#include <numbers>

#include <benchmark/benchmark.h>

#include "ctoa/dynamics.hpp"
#include "ctoa/operator.hpp"
#include "ctoa/spectral.hpp"
#include "ctoa/timekernel.hpp"

using namespace ctoa;

namespace {

const PhysicalParams kAnti{1.0, 1.0, 1.0, std::numbers::pi / 2};
const PotentialSpec kQuartic = PotentialSpec::polynomial({0, 0, 0, 0, 0.25});

void bm_goursat_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(TimeKernelField::goursat_solve(kQuartic, kAnti, n));
}
BENCHMARK(bm_goursat_solve)->Arg(64)->Arg(128)->Arg(256);

void bm_nystrom_fill(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CtoaKernel k(TimeKernelField::closed_form(PotentialSpec::harmonic(1.0, 1.0), kAnti),
                       kAnti);
    const auto rule = gauss_legendre(n, -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(nystrom_matrix(k, rule));
}
BENCHMARK(bm_nystrom_fill)->Arg(32)->Arg(64)->Arg(128);

void bm_eigensolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CtoaKernel k(TimeKernelField::closed_form(PotentialSpec::harmonic(1.0, 1.0), kAnti),
                       kAnti);
    const auto b = nystrom_matrix(k, gauss_legendre(n, -1.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(eigensolve(b));
}
BENCHMARK(bm_eigensolve)->Arg(32)->Arg(64)->Arg(128);

void bm_crank_nicolson_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto h = hamiltonian_matrix(PotentialSpec::harmonic(1.0, 1.0), kAnti, n);
    const CrankNicolson cn(h, 1e-3);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(n, {1.0, 0.0});
    psi /= std::sqrt(h.dq) * psi.norm();
    for (auto _ : state) {
        cn.step(psi);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(bm_crank_nicolson_step)->Arg(128)->Arg(256)->Arg(512);

} // namespace

BENCHMARK_MAIN();
