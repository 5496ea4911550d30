#pragma once

#include <complex>
#include <vector>

#include "ctoa/classical.hpp"
#include "ctoa/params.hpp"
#include "ctoa/timekernel.hpp"

namespace ctoa {

using Complex = std::complex<double>;

/// Position-representation kernel <q|T_gamma|q'> of the confined
/// time-of-arrival operator, assembled from a TimeKernelField. gamma == 0
/// selects the periodic branch, which carries an extra integral of T over
/// separations at fixed center. Immutable; point evaluation is pure.
class CtoaKernel {
public:
    CtoaKernel(TimeKernelField field, PhysicalParams params, int rel_quad_order = 16);

    const PhysicalParams& params() const { return params_; }
    const TimeKernelField& field() const { return field_; }

    /// Branch dispatch on gamma.
    Complex eval(double q, double qp) const;
    Complex operator()(double q, double qp) const { return eval(q, qp); }

    /// -mu T(q,q')/(hbar sin g) (e^{ig}H(q-q') + e^{-ig}H(q'-q)), H(0)=1/2.
    Complex nonperiodic(double q, double qp) const;
    /// (mu/i hbar) T sgn(q-q') - (mu/i l hbar) Int_0^{q-q'} T at fixed
    /// center (q+q')/2 and separation s', by Gauss-Legendre.
    Complex periodic(double q, double qp) const;

private:
    TimeKernelField field_;
    PhysicalParams params_;
    int rel_quad_order_;
    std::vector<double> qnodes_, qweights_; // Gauss-Legendre on [0,1]
};

/// Weyl component kernel <q|T_{2s+1,n}^gamma|q'>; the gamma = 0 overload is
/// the two-term periodic expression.
Complex weyl_term_kernel(int s, int n, double gamma, const PhysicalParams& params, double q,
                         double qp);

/// Kernel of the truncated Weyl series sum_terms alpha_{m,n} T_{m,n}
/// built from an LTOA term list (all p-powers must be odd).
Complex weyl_series_kernel(const LtoaSeries& series, const PhysicalParams& params, double q,
                           double qp);

/// max |K(q,q') - conj K(q',q)| over an n x n uniform sample of [-l,l]^2.
double hermiticity_defect(const CtoaKernel& k, int n);

} // namespace ctoa
