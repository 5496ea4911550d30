#include "ctoa/operator.hpp"

#include <cmath>
#include <stdexcept>

#include "ctoa/spectral.hpp"

namespace ctoa {

namespace {

constexpr Complex kImag{0.0, 1.0};

double heaviside(double x) { return x > 0 ? 1.0 : (x < 0 ? 0.0 : 0.5); }
double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

CtoaKernel::CtoaKernel(TimeKernelField field, PhysicalParams params, int rel_quad_order)
    : field_(std::move(field)), params_(params), rel_quad_order_(rel_quad_order) {
    params_.validate();
    if (rel_quad_order_ < 2) throw std::invalid_argument("CtoaKernel: quadrature order too small");
    const QuadratureRule rule = gauss_legendre(rel_quad_order_, 0.0, 1.0);
    qnodes_ = rule.nodes;
    qweights_ = rule.weights;
}

Complex CtoaKernel::eval(double q, double qp) const {
    return params_.periodic() ? periodic(q, qp) : nonperiodic(q, qp);
}

Complex CtoaKernel::nonperiodic(double q, double qp) const {
    const double g = params_.gamma;
    if (g == 0.0) throw std::domain_error("CtoaKernel: gamma = 0 requires the periodic branch");
    const Complex bracket = std::exp(kImag * g) * heaviside(q - qp) +
                            std::exp(-kImag * g) * heaviside(qp - q);
    return -params_.mu * field_.eval(q, qp) / (params_.hbar * std::sin(g)) * bracket;
}

Complex CtoaKernel::periodic(double q, double qp) const {
    const double mu = params_.mu, hbar = params_.hbar;
    const double delta = q - qp;
    const double c = 0.5 * (q + qp);
    const Complex first = mu / (kImag * hbar) * field_.eval(q, qp) * sgn(delta);
    // Int_0^delta T(c + s/2, c - s/2) ds, mapped to [0,1].
    double integral = 0.0;
    for (size_t i = 0; i < qnodes_.size(); ++i) {
        const double s = delta * qnodes_[i];
        integral += qweights_[i] * field_.eval(c + 0.5 * s, c - 0.5 * s);
    }
    integral *= delta;
    const Complex second = mu / (kImag * params_.l * hbar) * integral;
    return first - second;
}

Complex weyl_term_kernel(int s, int n, double gamma, const PhysicalParams& params, double q,
                         double qp) {
    if (s < 0 || n < 0) throw std::invalid_argument("weyl_term_kernel: s, n must be >= 0");
    const double hbar = params.hbar;
    const double center_pow = std::pow(0.5 * (q + qp), n);
    const double diff = q - qp;
    const double parity = (s % 2 == 0) ? 1.0 : -1.0;
    const double hbar_pow = std::pow(hbar, 2 * s + 1);
    if (gamma != 0.0) {
        const Complex bracket = std::exp(kImag * gamma) * heaviside(diff) +
                                std::exp(-kImag * gamma) * heaviside(-diff);
        return 1.0 / (2.0 * std::sin(gamma)) * center_pow * parity * std::pow(diff, 2 * s) /
               (hbar_pow * factorial(2 * s)) * bracket;
    }
    const Complex pref = kImag / params.l * parity / (2.0 * hbar_pow) * center_pow;
    return pref * (std::pow(diff, 2 * s) / factorial(2 * s) * sgn(diff) -
                   std::pow(diff, 2 * s + 1) / factorial(2 * s + 1));
}

Complex weyl_series_kernel(const LtoaSeries& series, const PhysicalParams& params, double q,
                           double qp) {
    Complex acc{0.0, 0.0};
    for (const auto& t : series.terms) {
        if (t.p_inv_pow % 2 == 0)
            throw std::invalid_argument("weyl_series_kernel: even p-power has no component kernel");
        const int s = (t.p_inv_pow - 1) / 2;
        acc += t.coeff * weyl_term_kernel(s, t.q_pow, params.gamma, params, q, qp);
    }
    return acc;
}

double hermiticity_defect(const CtoaKernel& k, int n) {
    if (n < 2) throw std::invalid_argument("hermiticity_defect: n must be >= 2");
    const double l = k.params().l;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double q = -l + 2.0 * l * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double qp = -l + 2.0 * l * j / (n - 1);
            worst = std::max(worst, std::abs(k.eval(q, qp) - std::conj(k.eval(qp, q))));
        }
    }
    return worst;
}

} // namespace ctoa
