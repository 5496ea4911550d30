#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ctoa/operator.hpp"

namespace ctoa {

struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing in [a,b]
    std::vector<double> weights; // positive, summing to b-a
};

/// Gauss-Legendre nodes/weights by Newton iteration on the Legendre
/// polynomial, mapped from [-1,1] to [a,b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Symmetrized Nystrom matrix B_ij = sqrt(w_i) K(q_i, q_j) sqrt(w_j);
/// similar to the collocation matrix but Hermitian, so real eigenvalues
/// come out of a Hermitian solver by construction.
Eigen::MatrixXcd nystrom_matrix(const CtoaKernel& k, const QuadratureRule& rule);

/// Arrival-time spectrum at the quadrature nodes. Eigenvalues sorted by
/// |tau| descending, ties broken positive-first; eigenvectors orthonormal
/// columns in the same order.
struct Spectrum {
    std::vector<double> eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    double max_residual = 0.0; // max ||B x - tau x|| over pairs

    /// Positions of the positive eigenvalues in descending order.
    std::vector<int> positive_indices() const;
};

/// Full Hermitian eigendecomposition; throws if B deviates from Hermitian
/// by more than 1e-10 (relative to ||B||).
Spectrum eigensolve(const Eigen::MatrixXcd& b);

/// Nystrom interpolation phi(q) = (1/tau) sum_j w_j K(q, q_j) phi(q_j) of
/// eigenpair `index` onto q_grid, normalized to unit trapezoid L2 norm.
/// Node values are recovered from the weighted eigenvector.
std::vector<Complex> nystrom_interpolate(const CtoaKernel& k, const QuadratureRule& rule,
                                         const Spectrum& spectrum, int index,
                                         std::span<const double> q_grid);

enum class NodalClass { Nodal, NonNodal };

/// Nodal iff |phi| dips below 1e-3 of its peak at an interior point where
/// the phase-aligned real part changes sign.
NodalClass classify_nodal(std::span<const Complex> phi);

} // namespace ctoa
