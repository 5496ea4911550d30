#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctoa/dynamics.hpp"

using namespace ctoa;

namespace {

const PhysicalParams kAnti{1.0, 1.0, 1.0, std::numbers::pi / 2};

Eigen::VectorXcd gaussian_packet(const ConfinedHamiltonian& h, double q0, double p0,
                                 double sigma) {
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(h.grid.size()));
    for (size_t i = 0; i < h.grid.size(); ++i) {
        const double q = h.grid[i];
        psi[static_cast<Eigen::Index>(i)] =
            std::exp(std::complex<double>{-(q - q0) * (q - q0) / (4.0 * sigma * sigma),
                                          p0 * q / kAnti.hbar});
    }
    psi /= std::sqrt(h.dq) * psi.norm();
    return psi;
}

} // namespace

TEST_CASE("hamiltonian matrix: structure and free ground state") {
    const auto h = hamiltonian_matrix(PotentialSpec::free(), kAnti, 256);
    REQUIRE(h.grid.size() == 256);
    CHECK(h.dq == doctest::Approx(2.0 / 256));
    CHECK(h.grid.front() == doctest::Approx(-1.0));
    CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-13);

    // Antiperiodic free box: lowest eigenvalue hbar^2 (pi/2l)^2 / 2mu = pi^2/8.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
    CHECK(es.eigenvalues()[0] == doctest::Approx(std::numbers::pi * std::numbers::pi / 8.0)
                                     .epsilon(1e-3));
    // Doubly degenerate (+-k).
    CHECK(es.eigenvalues()[1] == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-10));

    CHECK_THROWS_AS(hamiltonian_matrix(PotentialSpec::free(), kAnti, 8), std::invalid_argument);
}

TEST_CASE("corner wrap phases carry exp(-+ 2 i gamma)") {
    PhysicalParams p = kAnti;
    p.gamma = 0.7;
    const auto h = hamiltonian_matrix(PotentialSpec::free(), p, 32);
    const auto n = h.matrix.rows();
    const std::complex<double> offdiag = h.matrix(0, 1);
    CHECK(std::abs(h.matrix(0, n - 1) - offdiag * std::exp(std::complex<double>{0.0, -1.4})) <
          1e-14);
    CHECK(std::abs(h.matrix(n - 1, 0) - offdiag * std::exp(std::complex<double>{0.0, 1.4})) <
          1e-14);
}

TEST_CASE("observables on a known state") {
    const auto h = hamiltonian_matrix(PotentialSpec::free(), kAnti, 512);
    const auto psi = gaussian_packet(h, 0.2, 0.0, 0.1);
    std::vector<std::complex<double>> v(psi.data(), psi.data() + psi.size());
    const auto m = observables(v, h.grid, h.dq);
    CHECK(m.norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.mean_q == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(m.var_q == doctest::Approx(0.01).epsilon(1e-4));

    std::vector<std::complex<double>> zero(h.grid.size(), 0.0);
    CHECK_THROWS_AS(observables(zero, h.grid, h.dq), std::domain_error);
}

TEST_CASE("crank-nicolson preserves the norm and is reversible") {
    const auto h = hamiltonian_matrix(PotentialSpec::harmonic(1.0, 1.0), kAnti, 128);
    auto psi = gaussian_packet(h, 0.3, 1.0, 0.15);
    const Eigen::VectorXcd psi0 = psi;
    const double dt = 1e-3;
    const CrankNicolson fwd(h, dt), bwd(h, -dt);
    for (int i = 0; i < 500; ++i) fwd.step(psi);
    CHECK(std::abs(std::sqrt(h.dq) * psi.norm() - 1.0) < 1e-12);
    for (int i = 0; i < 500; ++i) bwd.step(psi);
    CHECK((psi - psi0).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("crank-nicolson conserves energy") {
    const auto h = hamiltonian_matrix(PotentialSpec::harmonic(1.0, 1.0), kAnti, 128);
    auto psi = gaussian_packet(h, 0.4, 0.0, 0.12);
    const auto energy = [&](const Eigen::VectorXcd& s) {
        return (s.adjoint() * h.matrix * s)[0].real() * h.dq;
    };
    const double e0 = energy(psi);
    const CrankNicolson cn(h, 2e-3);
    for (int i = 0; i < 1000; ++i) cn.step(psi);
    CHECK(std::abs(energy(psi) - e0) < 1e-10 * std::abs(e0));
}

TEST_CASE("evolution trace bookkeeping") {
    const auto h = hamiltonian_matrix(PotentialSpec::free(), kAnti, 64);
    const auto psi = gaussian_packet(h, 0.0, 0.0, 0.2);
    const auto trace = crank_nicolson_evolve(h, psi, 1e-3, 40, 10);
    REQUIRE(trace.times.size() == 41);
    CHECK(trace.norm.size() == 41);
    CHECK(trace.mean_q.size() == 41);
    CHECK(trace.var_q.size() == 41);
    CHECK(trace.times[0] == 0.0);
    CHECK(trace.times[40] == doctest::Approx(0.04));
    CHECK(trace.snapshots.size() == 5); // t = 0 plus every 10th step
    CHECK(trace.snapshots[1].first == doctest::Approx(0.01));
    CHECK(trace.snapshots[1].second.size() == 64);

    // A free packet at rest spreads: variance grows monotonically.
    for (size_t i = 1; i < trace.var_q.size(); ++i) CHECK(trace.var_q[i] >= trace.var_q[i - 1]);
}

TEST_CASE("arrival detection recovers an exact parabolic minimum") {
    EvolutionTrace t;
    for (int i = 0; i <= 20; ++i) {
        const double time = 0.05 * i;
        t.times.push_back(time);
        t.var_q.push_back(1.0 + (time - 0.37) * (time - 0.37));
        t.mean_q.push_back(0.5 - time); // linear, so interpolation is exact
        t.norm.push_back(1.0);
    }
    const auto a = detect_arrival(t);
    CHECK(!a.boundary_flag);
    CHECK(a.t_star == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(a.var_min == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(a.mean_at_t_star == doctest::Approx(0.13).epsilon(1e-10));

    // Monotone variance: the minimum sits at the boundary and is flagged.
    EvolutionTrace mono;
    for (int i = 0; i <= 10; ++i) {
        mono.times.push_back(0.1 * i);
        mono.var_q.push_back(1.0 + 0.1 * i);
        mono.mean_q.push_back(0.0);
        mono.norm.push_back(1.0);
    }
    CHECK(detect_arrival(mono).boundary_flag);
}
