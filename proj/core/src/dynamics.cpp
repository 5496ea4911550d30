#include "ctoa/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace ctoa {

ConfinedHamiltonian hamiltonian_matrix(const PotentialSpec& v, const PhysicalParams& params,
                                       int n) {
    params.validate();
    if (n < 16) throw std::invalid_argument("hamiltonian_matrix: N must be >= 16");

    ConfinedHamiltonian h;
    h.params = params;
    h.dq = 2.0 * params.l / n;
    h.grid.resize(n);
    for (int i = 0; i < n; ++i) h.grid[i] = -params.l + i * h.dq;

    const double k = 0.5 * params.hbar * params.hbar / (params.mu * h.dq * h.dq);
    const std::complex<double> wrap = std::exp(std::complex<double>{0.0, -2.0 * params.gamma});

    h.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h.matrix(i, i) = 2.0 * k + v.eval(h.grid[i]);
        if (i + 1 < n) {
            h.matrix(i, i + 1) = -k;
            h.matrix(i + 1, i) = -k;
        }
    }
    // Quasi-periodic corners: row 0 couples to the last column through the
    // boundary phase, and conjugately on the transposed entry.
    h.matrix(0, n - 1) = -k * wrap;
    h.matrix(n - 1, 0) = -k * std::conj(wrap);
    return h;
}

Moments observables(std::span<const std::complex<double>> psi, std::span<const double> grid,
                    double dq) {
    if (psi.size() != grid.size()) throw std::invalid_argument("observables: size mismatch");
    double norm = 0.0, m1 = 0.0, m2 = 0.0;
    for (size_t i = 0; i < psi.size(); ++i) {
        const double d = std::norm(psi[i]) * dq;
        norm += d;
        m1 += grid[i] * d;
        m2 += grid[i] * grid[i] * d;
    }
    if (norm <= 0.0) throw std::domain_error("observables: zero norm");
    const double mean = m1 / norm;
    return {norm, mean, m2 / norm - mean * mean};
}

CrankNicolson::CrankNicolson(const ConfinedHamiltonian& h, double dt) : dt_(dt) {
    if (dt == 0.0) throw std::invalid_argument("CrankNicolson: dt must be nonzero");
    const int n = static_cast<int>(h.matrix.rows());
    const std::complex<double> a{0.0, 0.5 * dt / h.params.hbar};
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd lhs = eye + a * h.matrix;
    rhs_ = eye - a * h.matrix;
    lhs_.compute(lhs);
    if (std::abs(lhs_.determinant()) == 0.0)
        throw std::runtime_error("CrankNicolson: singular propagator system");
}

void CrankNicolson::step(Eigen::VectorXcd& psi) const { psi = lhs_.solve(rhs_ * psi); }

EvolutionTrace crank_nicolson_evolve(const ConfinedHamiltonian& h, Eigen::VectorXcd psi0, double dt,
                                     int steps, int snapshot_stride) {
    if (!(dt > 0.0)) throw std::invalid_argument("crank_nicolson_evolve: dt must be positive");
    if (steps < 1) throw std::invalid_argument("crank_nicolson_evolve: steps must be >= 1");
    const CrankNicolson prop(h, dt);

    EvolutionTrace trace;
    trace.times.reserve(steps + 1);
    auto record = [&](double t, const Eigen::VectorXcd& psi) {
        const Moments m =
            observables({psi.data(), static_cast<size_t>(psi.size())}, h.grid, h.dq);
        trace.times.push_back(t);
        trace.norm.push_back(m.norm);
        trace.mean_q.push_back(m.mean_q);
        trace.var_q.push_back(m.var_q);
    };
    auto snapshot = [&](double t, const Eigen::VectorXcd& psi) {
        std::vector<double> density(psi.size());
        for (int i = 0; i < psi.size(); ++i) density[static_cast<size_t>(i)] = std::norm(psi[i]);
        trace.snapshots.emplace_back(t, std::move(density));
    };

    record(0.0, psi0);
    if (snapshot_stride > 0) snapshot(0.0, psi0);
    for (int s = 1; s <= steps; ++s) {
        prop.step(psi0);
        const double t = s * dt;
        record(t, psi0);
        if (snapshot_stride > 0 && s % snapshot_stride == 0) snapshot(t, psi0);
    }
    return trace;
}

Arrival detect_arrival(const EvolutionTrace& trace) {
    const size_t n = trace.times.size();
    if (n < 5) throw std::invalid_argument("detect_arrival: need >= 5 samples");
    size_t imin = 0;
    for (size_t i = 1; i < n; ++i)
        if (trace.var_q[i] < trace.var_q[imin]) imin = i;

    Arrival a{};
    a.boundary_flag = (imin == 0 || imin == n - 1);
    if (a.boundary_flag) {
        a.t_star = trace.times[imin];
        a.var_min = trace.var_q[imin];
        a.mean_at_t_star = trace.mean_q[imin];
        return a;
    }

    // Parabola through the three bracketing samples, Newton form.
    const double t0 = trace.times[imin - 1], t1 = trace.times[imin], t2 = trace.times[imin + 1];
    const double v0 = trace.var_q[imin - 1], v1 = trace.var_q[imin], v2 = trace.var_q[imin + 1];
    const double f01 = (v1 - v0) / (t1 - t0);
    const double f12 = (v2 - v1) / (t2 - t1);
    const double curv = (f12 - f01) / (t2 - t0);
    double t_star = t1, var_min = v1;
    if (curv > 0.0) {
        t_star = 0.5 * (t0 + t1) - 0.5 * f01 / curv;
        var_min = v0 + f01 * (t_star - t0) + curv * (t_star - t0) * (t_star - t1);
    }
    a.t_star = t_star;
    a.var_min = var_min;
    // Linear interpolation of <q> at the refined minimum.
    size_t k = imin;
    if (t_star < t1 && imin > 0) k = imin - 1;
    const double tl = trace.times[k], tr = trace.times[k + 1];
    const double w = (t_star - tl) / (tr - tl);
    a.mean_at_t_star = (1.0 - w) * trace.mean_q[k] + w * trace.mean_q[k + 1];
    return a;
}

} // namespace ctoa
