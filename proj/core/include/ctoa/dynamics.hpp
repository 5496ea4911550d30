#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ctoa/params.hpp"
#include "ctoa/potential.hpp"

namespace ctoa {

/// Finite-difference Hamiltonian on the uniform grid q_i = -l + i*dq,
/// i = 0..N-1, dq = 2l/N, with quasi-periodic wrap phases exp(-+2i gamma)
/// on the corner entries so that phi(-l) = exp(-2i gamma) phi(l).
struct ConfinedHamiltonian {
    Eigen::MatrixXcd matrix;
    std::vector<double> grid;
    double dq = 0.0;
    PhysicalParams params;
};

ConfinedHamiltonian hamiltonian_matrix(const PotentialSpec& v, const PhysicalParams& params, int n);

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> norm;
    std::vector<double> mean_q;
    std::vector<double> var_q;
    /// (t, |psi|^2 on the grid) at the configured stride; stride 0 disables.
    std::vector<std::pair<double, std::vector<double>>> snapshots;
};

struct Moments {
    double norm;
    double mean_q;
    double var_q;
};

/// Riemann sums with dq weights on the uniform grid.
Moments observables(std::span<const std::complex<double>> psi, std::span<const double> grid,
                    double dq);

/// Prefactored Crank-Nicolson propagator: each step solves
/// (I + i dt H / 2hbar) psi' = (I - i dt H / 2hbar) psi.
/// Unitary up to roundoff; the step with -dt inverts it exactly.
class CrankNicolson {
public:
    CrankNicolson(const ConfinedHamiltonian& h, double dt);
    void step(Eigen::VectorXcd& psi) const;
    double dt() const { return dt_; }

private:
    Eigen::PartialPivLU<Eigen::MatrixXcd> lhs_;
    Eigen::MatrixXcd rhs_;
    double dt_;
};

/// Evolve psi0 for `steps` steps, recording norm / <q> / Var(q) each step
/// (including t = 0) and density snapshots every `snapshot_stride` steps.
EvolutionTrace crank_nicolson_evolve(const ConfinedHamiltonian& h, Eigen::VectorXcd psi0, double dt,
                                     int steps, int snapshot_stride = 0);

struct Arrival {
    double t_star;
    double var_min;
    double mean_at_t_star;
    bool boundary_flag; // minimum sat at the first/last sample
};

/// Location of the variance minimum, refined by a parabolic fit through the
/// three samples bracketing the discrete minimum.
Arrival detect_arrival(const EvolutionTrace& trace);

} // namespace ctoa
