#pragma once

#include <complex>
#include <vector>

#include "ctoa/operator.hpp"
#include "ctoa/params.hpp"
#include "ctoa/potential.hpp"
#include "ctoa/timekernel.hpp"

namespace ctoa {

/// Smooth test function on [-l,l] from the polynomial-bump family
/// (1 - (q/l)^2)^k * P(q), L2-normalized, with exact derivatives. The bump
/// factor makes phi and its first k-1 derivatives vanish at the walls,
/// which is what the weak commutation relation requires of its domain.
class TestFunction {
public:
    static TestFunction bump(int k, std::vector<double> poly, double l);
    /// Plain normalized polynomial, non-vanishing at the walls; negative
    /// control for the weak CCR.
    static TestFunction plain(std::vector<double> poly, double l);

    double operator()(double q) const { return eval_poly(coeffs_, q); }
    double d1(double q) const { return eval_poly(deriv1_, q); }
    double d2(double q) const { return eval_poly(deriv2_, q); }
    double l() const { return l_; }

private:
    TestFunction(std::vector<double> coeffs, double l);
    static double eval_poly(const std::vector<double>& c, double q);

    std::vector<double> coeffs_, deriv1_, deriv2_;
    double l_ = 1.0;
};

/// Weak-sense commutation defect
///   <H fa | T fb> - <fa | T (H fb)> - i hbar <fa | fb>,
/// with T applied by Gauss-Legendre quadrature split at the kernel's
/// diagonal and H applied analytically to the test functions. Zero (up to
/// quadrature and kernel resolution) exactly when the kernel is canonically
/// conjugate to the Hamiltonian on boundary-vanishing functions.
/// Requires gamma != 0 and a polynomial potential.
Complex weak_ccr_defect(const CtoaKernel& k, const PotentialSpec& v, const PhysicalParams& params,
                        const TestFunction& fa, const TestFunction& fb, int quad_n = 64);

/// Phase-space symbol of the infinite-line kernel -i mu/hbar T sgn(q-q'):
/// the regularized oscillatory integral
///   Int K(q+v/2, q-v/2) exp(-i v p / hbar) dv
/// evaluated by fitting the (even) separation profile of T on [0, cutoff]
/// with an even polynomial and summing its regularized sine moments.
/// Normalization is anchored so the free kernel returns exactly -mu q / p.
/// cutoff <= 0 selects the default 0.8 * min(2(l-|q|), 2l); fit_half_degree
/// is the number of even powers beyond the constant.
double wigner_transform(const TimeKernelField& field, const PhysicalParams& params, double q,
                        double p, double cutoff = 0.0, int fit_half_degree = 4);

} // namespace ctoa
