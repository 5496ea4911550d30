// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and nowhere else.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ctoa/classical.hpp"
#include "ctoa/dynamics.hpp"
#include "ctoa/operator.hpp"
#include "ctoa/spectral.hpp"
#include "ctoa/timekernel.hpp"
#include "ctoa/verify.hpp"

using namespace ctoa;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const PhysicalParams kAnti{1.0, 1.0, 1.0, std::numbers::pi / 2};
const PhysicalParams kPeriodic{1.0, 1.0, 1.0, 0.0};

struct EvolvedMode {
    double tau = 0.0;
    Arrival arrival{};
};

// Interpolate eigenpair `index` of `spec` onto an n-point dynamics grid and
// evolve it for run_mult*tau with dt = tau/200.
EvolvedMode evolve_mode(const CtoaKernel& kernel, const QuadratureRule& rule,
                        const Spectrum& spec, int index, const PotentialSpec& v, int n,
                        double run_mult) {
    EvolvedMode out;
    out.tau = spec.eigenvalues[static_cast<size_t>(index)];
    const auto h = hamiltonian_matrix(v, kAnti, n);
    const auto phi = nystrom_interpolate(kernel, rule, spec, index, h.grid);
    Eigen::VectorXcd psi(n);
    for (int i = 0; i < n; ++i) psi[i] = phi[static_cast<size_t>(i)];
    psi /= std::sqrt(h.dq) * psi.norm();
    const double dt = out.tau / 200.0;
    const int steps = static_cast<int>(std::lround(200.0 * run_mult));
    const auto trace = crank_nicolson_evolve(h, psi, dt, steps);
    out.arrival = detect_arrival(trace);
    return out;
}

void criteria_spectrum_and_dynamics() {
    const auto v = PotentialSpec::harmonic(1.0, 1.0);
    const CtoaKernel kernel(TimeKernelField::closed_form(v, kAnti), kAnti);
    const auto rule = gauss_legendre(128, -1.0, 1.0);
    const auto spec = eigensolve(nystrom_matrix(kernel, rule));
    const auto pos = spec.positive_indices();

    // 1. Benchmark pair n=5 / n=6 of the positive branch: arrival times
    //    0.0336 / 0.0303 with non-nodal / nodal eigenfunctions.
    {
        const double t5 = spec.eigenvalues[static_cast<size_t>(pos[4])];
        const double t6 = spec.eigenvalues[static_cast<size_t>(pos[5])];
        std::vector<double> fine(257);
        for (size_t i = 0; i < fine.size(); ++i)
            fine[i] = -1.0 + 2.0 * static_cast<double>(i) / (fine.size() - 1);
        const auto phi5 = nystrom_interpolate(kernel, rule, spec, pos[4], fine);
        const auto phi6 = nystrom_interpolate(kernel, rule, spec, pos[5], fine);
        const bool ok = std::abs(t5 - 0.0336) < 1e-3 && std::abs(t6 - 0.0303) < 1e-3 &&
                        classify_nodal(phi5) == NodalClass::NonNodal &&
                        classify_nodal(phi6) == NodalClass::Nodal;
        report("harmonic-benchmark-pair", ok,
               "tau5=" + fmt(t5) + " tau6=" + fmt(t6) + " classes=" +
                   (classify_nodal(phi5) == NodalClass::NonNodal ? "NonNodal" : "Nodal") + "/" +
                   (classify_nodal(phi6) == NodalClass::Nodal ? "Nodal" : "NonNodal"));
    }

    // 2. The n=5 eigenfunction arrives: variance minimum near t = tau with
    //    the packet centered at the origin.
    const auto lead = evolve_mode(kernel, rule, spec, pos[4], v, 512, 2.0);
    {
        const double ratio = lead.arrival.t_star / lead.tau;
        const bool ok = !lead.arrival.boundary_flag && ratio > 0.9 && ratio < 1.1 &&
                        std::abs(lead.arrival.mean_at_t_star) < 0.05;
        report("unitary-arrival", ok,
               "t*/tau=" + fmt(ratio) + " <q>(t*)=" + fmt(lead.arrival.mean_at_t_star));
    }

    // 3. Sharper localization with increasing n: minimum variance strictly
    //    decreasing within each nodal class (n = 1,3,5 and n = 2,4,6).
    {
        std::vector<double> mins;
        for (int j = 0; j < 6; ++j)
            mins.push_back(evolve_mode(kernel, rule, spec, pos[static_cast<size_t>(j)], v, 512, 2.0)
                               .arrival.var_min);
        bool ok = mins[2] < mins[0] && mins[4] < mins[2] && // non-nodal branch
                  mins[3] < mins[1] && mins[5] < mins[3];   // nodal branch
        std::string detail = "var_min=";
        for (size_t j = 0; j < mins.size(); ++j) detail += (j ? "," : "") + fmt(mins[j]);
        report("localization-ordering", ok, detail);
    }

    // 4. Time-reversal pairing of the spectrum.
    {
        double worst = 0.0;
        const size_t n = spec.eigenvalues.size();
        for (size_t i = 0; i + 1 < n; i += 2)
            worst = std::max(worst, std::abs(spec.eigenvalues[i] + spec.eigenvalues[i + 1]));
        report("spectrum-pairing", worst < 1e-10, "max|tau_+ + tau_-|=" + fmt(worst));
    }
}

void criterion_goursat() {
    const auto v = PotentialSpec::harmonic(1.0, 1.0);
    const auto exact = TimeKernelField::closed_form(v, kAnti);
    auto max_err = [&](const TimeKernelField& f) {
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                const double q = -1.0 + 0.02 * i, qp = -1.0 + 0.02 * j;
                worst = std::max(worst, std::abs(f.eval(q, qp) - exact.eval(q, qp)));
            }
        return worst;
    };
    const auto f64 = TimeKernelField::goursat_solve(v, kAnti, 64);
    const auto f128 = TimeKernelField::goursat_solve(v, kAnti, 128);
    const double ratio = max_err(f64) / max_err(f128);

    // Residual of the solved field vs a closed form sampled onto the same grid.
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    exact.export_binary(buf, 128);
    const auto sampled = TimeKernelField::import_binary(buf);
    const double r_solved = pde_residual(f128, v, kAnti, 120);
    const double r_sampled = pde_residual(sampled, v, kAnti, 120);

    bool bc_exact = true;
    const int n = (f128.n_u() - 1) / 2;
    for (int i = 0; i < f128.n_u(); ++i) {
        const double u = -2.0 + i * f128.h_u();
        bc_exact = bc_exact && f128.grid_value(i, n) == u / 4.0 && f128.grid_value(n, i) == 0.0;
    }

    const bool ok = std::abs(ratio - 4.0) < 0.8 && r_solved <= 5.0 * r_sampled && bc_exact;
    report("goursat-solver", ok,
           "order-ratio=" + fmt(ratio) + " residual=" + fmt(r_solved) + " sampled-ref=" +
               fmt(r_sampled) + (bc_exact ? " bc=exact" : " bc=VIOLATED"));
}

void criterion_periodic() {
    const CtoaKernel free_k(TimeKernelField::closed_form(PotentialSpec::free(), kPeriodic),
                            kPeriodic);
    const CtoaKernel harm_k(
        TimeKernelField::closed_form(PotentialSpec::harmonic(1.0, 1.0), kPeriodic), kPeriodic);

    auto shi = [](double x) {
        double pow_term = x, sum = x;
        for (int k = 1; k < 40; ++k) {
            pow_term *= x * x / ((2.0 * k) * (2.0 * k + 1.0));
            sum += pow_term / (2.0 * k + 1.0);
        }
        return sum;
    };

    std::mt19937 rng(2026);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_free = 0.0, worst_harm = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double q = u(rng), qp = u(rng);
        const double sg = (q > qp) - (q < qp);
        const Complex free_ref =
            1.0 / (4.0 * Complex{0.0, 1.0}) * ((q + qp) * sg - (q * q - qp * qp));
        worst_free = std::max(worst_free, std::abs(free_k.eval(q, qp) - free_ref));

        const double x = 0.5 * (q * q - qp * qp);
        const Complex half_i{0.0, -0.5};
        const Complex harm_ref =
            (q == qp ? Complex{0, 0} : half_i * std::sinh(x) / std::abs(q - qp)) -
            half_i * shi(x);
        worst_harm = std::max(worst_harm, std::abs(harm_k.eval(q, qp) - harm_ref));
    }
    const bool ok = worst_free < 1e-12 && worst_harm < 1e-10;
    report("periodic-kernel", ok, "free-err=" + fmt(worst_free) + " harm-err=" + fmt(worst_harm));
}

void criterion_weyl() {
    const CtoaKernel closed(TimeKernelField::closed_form(PotentialSpec::harmonic(1.0, 1.0), kAnti),
                            kAnti);
    const auto series = ltoa_terms(PotentialSpec::harmonic(1.0, 1.0), kAnti, 14);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double q = u(rng), qp = u(rng);
        worst = std::max(worst,
                         std::abs(weyl_series_kernel(series, kAnti, q, qp) - closed.eval(q, qp)));
    }
    report("weyl-expansion", worst < 1e-9, "max-err@K=14: " + fmt(worst));
}

void criterion_weak_ccr() {
    // Mixed-parity pair: keeps every term of the relation, including the
    // i hbar overlap, away from a structural zero.
    const auto fa = TestFunction::bump(3, {1.0, 0.5}, 1.0);
    const auto fb = TestFunction::bump(3, {0.5, 1.0}, 1.0);

    const auto harm = PotentialSpec::harmonic(1.0, 1.0);
    const CtoaKernel hk(TimeKernelField::closed_form(harm, kAnti), kAnti);
    const double h_coarse = std::abs(weak_ccr_defect(hk, harm, kAnti, fa, fb, 8));
    const double h_fine = std::abs(weak_ccr_defect(hk, harm, kAnti, fa, fb, 64));

    const auto quartic = PotentialSpec::polynomial({0, 0, 0, 0, 0.25});
    const CtoaKernel qk96(TimeKernelField::goursat_solve(quartic, kAnti, 96), kAnti);
    const CtoaKernel qk192(TimeKernelField::goursat_solve(quartic, kAnti, 192), kAnti);
    const double q_coarse = std::abs(weak_ccr_defect(qk96, quartic, kAnti, fa, fb, 64));
    const double q_fine = std::abs(weak_ccr_defect(qk192, quartic, kAnti, fa, fb, 64));

    const auto wall = TestFunction::plain({1.0, 1.0}, 1.0);
    const double control = std::abs(weak_ccr_defect(hk, harm, kAnti, fa, wall, 64));

    const bool ok = h_fine < 1e-3 && h_fine <= h_coarse && q_fine < 1e-3 &&
                    q_fine <= q_coarse && control >= 1e-2;
    report("weak-ccr", ok,
           "harm=" + fmt(h_fine) + "(coarse " + fmt(h_coarse) + ") quartic=" + fmt(q_fine) +
               "(coarse " + fmt(q_coarse) + ") control=" + fmt(control));
}

void criterion_unitarity() {
    const auto h = hamiltonian_matrix(PotentialSpec::harmonic(1.0, 1.0), kAnti, 256);
    Eigen::VectorXcd psi(256);
    for (int i = 0; i < 256; ++i) {
        const double q = h.grid[static_cast<size_t>(i)];
        psi[i] = std::exp(Complex{-(q - 0.3) * (q - 0.3) / (4.0 * 0.15 * 0.15), 1.0 * q});
    }
    psi /= std::sqrt(h.dq) * psi.norm();

    const CrankNicolson fwd(h, 1e-3), bwd(h, -1e-3);
    Eigen::VectorXcd evolved = psi;
    double worst_norm = 0.0;
    for (int i = 0; i < 10000; ++i) {
        fwd.step(evolved);
        worst_norm = std::max(worst_norm, std::abs(std::sqrt(h.dq) * evolved.norm() - 1.0));
    }
    Eigen::VectorXcd back = psi;
    for (int i = 0; i < 1000; ++i) fwd.step(back);
    for (int i = 0; i < 1000; ++i) bwd.step(back);
    const double rev = (back - psi).cwiseAbs().maxCoeff();

    const bool ok = worst_norm < 1e-10 && rev < 1e-8;
    report("cn-unitarity", ok, "norm-drift=" + fmt(worst_norm) + " reversibility=" + fmt(rev));
}

void criterion_wigner() {
    const auto free_field = TimeKernelField::closed_form(PotentialSpec::free(), kAnti);
    double worst_free = 0.0;
    for (double q : {-0.5, 0.2, 0.6})
        for (double p : {-1.5, 0.8, 2.0})
            worst_free =
                std::max(worst_free, std::abs(wigner_transform(free_field, kAnti, q, p) + q / p));

    const auto harm = PotentialSpec::harmonic(1.0, 1.0);
    const auto harm_field = TimeKernelField::closed_form(harm, kAnti);
    const auto series = ltoa_terms(harm, kAnti, 10);
    double worst_harm = 0.0;
    for (double q : {0.1, 0.2, 0.3, -0.25})
        for (double p : {-1.5, 1.0, 1.4}) {
            if (std::abs(q / p) >= 0.5) continue;
            worst_harm = std::max(worst_harm, std::abs(wigner_transform(harm_field, kAnti, q, p) -
                                                       ltoa_eval(series, q, p)));
        }

    // Quartic quantum correction scales as hbar^2: halving hbar divides the
    // deviation from the classical local time by ~4.
    const auto quartic = PotentialSpec::polynomial({0, 0, 0, 0, 0.25});
    const auto q_series = ltoa_terms(quartic, kAnti, 8);
    PhysicalParams p1 = kAnti;
    p1.hbar = 0.8;
    PhysicalParams p2 = kAnti;
    p2.hbar = 0.4;
    const auto qf1 = TimeKernelField::goursat_solve(quartic, p1, 256);
    const auto qf2 = TimeKernelField::goursat_solve(quartic, p2, 256);
    const double q0 = 0.2, p0 = 1.2;
    const double d1 = wigner_transform(qf1, p1, q0, p0) - ltoa_eval(q_series, q0, p0);
    const double d2 = wigner_transform(qf2, p2, q0, p0) - ltoa_eval(q_series, q0, p0);
    const double ratio = d1 / d2;

    const bool ok = worst_free < 1e-6 && worst_harm < 1e-3 && std::abs(ratio - 4.0) < 1.0;
    report("wigner-symbol", ok,
           "free=" + fmt(worst_free) + " harm=" + fmt(worst_harm) + " hbar-ratio=" + fmt(ratio));
}

void criterion_linear_replication() {
    const auto v = PotentialSpec::linear(1.0);
    const CtoaKernel kernel(TimeKernelField::closed_form(v, kAnti), kAnti);
    const auto rule = gauss_legendre(128, -1.0, 1.0);
    const auto spec = eigensolve(nystrom_matrix(kernel, rule));
    const auto pos = spec.positive_indices();

    double worst_pair = 0.0;
    for (size_t i = 0; i + 1 < spec.eigenvalues.size(); i += 2)
        worst_pair = std::max(worst_pair, std::abs(spec.eigenvalues[i] + spec.eigenvalues[i + 1]));

    const auto lead = evolve_mode(kernel, rule, spec, pos[4], v, 512, 2.0);
    const double ratio = lead.arrival.t_star / lead.tau;
    const bool ok = worst_pair < 1e-10 && !lead.arrival.boundary_flag && ratio > 0.9 &&
                    ratio < 1.1 && std::abs(lead.arrival.mean_at_t_star) < 0.05;
    report("linear-replication", ok,
           "pairing=" + fmt(worst_pair) + " t*/tau=" + fmt(ratio) + " <q>(t*)=" +
               fmt(lead.arrival.mean_at_t_star));
}

} // namespace

int main() {
    criteria_spectrum_and_dynamics();
    criterion_goursat();
    criterion_periodic();
    criterion_weyl();
    criterion_weak_ccr();
    criterion_unitarity();
    criterion_wigner();
    criterion_linear_replication();
    if (g_failures) std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
