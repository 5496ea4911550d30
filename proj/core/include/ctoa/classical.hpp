#pragma once

#include <optional>
#include <vector>

#include "ctoa/params.hpp"
#include "ctoa/potential.hpp"

namespace ctoa {

/// Signed classical time of arrival at the origin for phase-space point
/// (q, p), computed by adaptive quadrature of
///   -sgn(p) sqrt(mu/2) * Int_0^q (H(q,p) - V(q'))^(-1/2) dq'.
/// Throws if p == 0 or the path is classically forbidden (H - V <= 0
/// somewhere between 0 and q, i.e. no real arrival).
double classical_toa(const PotentialSpec& v, const PhysicalParams& params, double q, double p);

/// Trajectory oracle: integrate Hamilton's equations with fixed-step RK4
/// from (q0, p0) and return the first t in (0, t_max] with q(t) = 0,
/// refined by bisection on the sign change. Empty if the trajectory never
/// crosses the origin within t_max.
std::optional<double> classical_arrival_ode(const PotentialSpec& v, const PhysicalParams& params,
                                            double q0, double p0, double t_max);

/// One monomial coeff * q^q_pow * p^(-p_inv_pow) of the local-time-of-arrival
/// expansion about the origin.
struct LtoaTerm {
    int q_pow;
    int p_inv_pow;
    double coeff;
};

struct LtoaSeries {
    std::vector<LtoaTerm> terms;
    int order = 0; // truncation index K
};

/// Local time of arrival as a truncated series: T = sum_k (-1)^k T_k with
/// T_0 = -mu q / p and T_k = -mu p^-1 Int_0^q (dV/dq')(dT_{k-1}/dp) dq'.
/// The recursion runs termwise on (q_pow, p_inv_pow, coeff) triples: d/dp
/// lowers p^-m to -m p^-(m+1), the integral raises powers of q. Polynomial
/// potentials only.
LtoaSeries ltoa_terms(const PotentialSpec& v, const PhysicalParams& params, int K);

double ltoa_eval(const LtoaSeries& series, double q, double p);

} // namespace ctoa
