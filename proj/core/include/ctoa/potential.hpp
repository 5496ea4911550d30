#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ctoa/params.hpp"

namespace ctoa {

enum class PotentialKind { Free, Linear, Harmonic, Polynomial, Tabulated };

/// Potential model V(q) on the box [-l, l].
///
/// Free/Linear/Harmonic/Polynomial are backed by a coefficient vector
/// (c0 + c1 q + c2 q^2 + ...); Tabulated interpolates sampled values and is
/// only defined inside its sample range. Systems with degree <= 2 are the
/// "linear systems" for which closed-form time kernels exist.
class PotentialSpec {
public:
    static PotentialSpec free();
    static PotentialSpec linear(double lambda);
    /// V(q) = mu * omega^2 * q^2 / 2 (the mass enters the coefficient).
    static PotentialSpec harmonic(double omega, double mu = 1.0);
    static PotentialSpec polynomial(std::vector<double> coeffs);
    /// Piecewise-cubic interpolation of samples on ascending nodes.
    /// Continuity is all the kernel solver needs; smoothness of the input
    /// data is the caller's responsibility.
    static PotentialSpec tabulated(std::vector<double> nodes, std::vector<double> values);

    PotentialKind kind() const { return kind_; }
    int degree() const;
    bool is_linear_system() const { return kind_ != PotentialKind::Tabulated && degree() <= 2; }

    /// Slope for Linear, angular frequency for Harmonic.
    double lambda() const { return lambda_; }
    double omega() const { return omega_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double eval(double q) const;
    /// dV/dq; exact for polynomial kinds, finite-difference for Tabulated.
    double derivative(double q) const;

    std::string describe() const;

private:
    PotentialSpec() = default;

    PotentialKind kind_ = PotentialKind::Free;
    std::vector<double> coeffs_{0.0};
    double lambda_ = 0.0;
    double omega_ = 0.0;
    std::vector<double> tab_nodes_;
    std::vector<double> tab_values_;
};

inline double eval_potential(const PotentialSpec& v, double q) { return v.eval(q); }

} // namespace ctoa
