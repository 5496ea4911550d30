#include "ctoa/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "ctoa/spectral.hpp"

namespace ctoa {

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> out(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<double>(i);
    return out;
}

std::vector<double> normalized(std::vector<double> c, double l) {
    // Exact L2 norm on [-l,l] from monomial moments.
    double norm2 = 0.0;
    const auto sq = poly_mul(c, c);
    for (size_t i = 0; i < sq.size(); i += 2)
        norm2 += sq[i] * 2.0 * std::pow(l, static_cast<double>(i) + 1) / (static_cast<double>(i) + 1);
    if (!(norm2 > 0.0)) throw std::invalid_argument("TestFunction: zero polynomial");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : c) x *= inv;
    return c;
}

} // namespace

TestFunction::TestFunction(std::vector<double> coeffs, double l)
    : coeffs_(std::move(coeffs)), l_(l) {
    deriv1_ = poly_derivative(coeffs_);
    deriv2_ = poly_derivative(deriv1_);
}

double TestFunction::eval_poly(const std::vector<double>& c, double q) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * q + c[i];
    return acc;
}

TestFunction TestFunction::bump(int k, std::vector<double> poly, double l) {
    if (k < 1) throw std::invalid_argument("TestFunction: bump exponent must be >= 1");
    if (!(l > 0.0)) throw std::invalid_argument("TestFunction: l must be positive");
    if (poly.empty()) poly = {1.0};
    std::vector<double> base{1.0};
    const std::vector<double> window{1.0, 0.0, -1.0 / (l * l)}; // 1 - (q/l)^2
    for (int i = 0; i < k; ++i) base = poly_mul(base, window);
    return TestFunction(normalized(poly_mul(base, poly), l), l);
}

TestFunction TestFunction::plain(std::vector<double> poly, double l) {
    if (poly.empty()) poly = {1.0};
    return TestFunction(normalized(std::move(poly), l), l);
}

namespace {

// T f at one point, quadrature split at the kernel's diagonal jump.
Complex apply_kernel(const CtoaKernel& k, const std::function<double(double)>& f, double x,
                     int quad_n) {
    const double l = k.params().l;
    Complex acc{0.0, 0.0};
    for (const auto& [a, b] : {std::pair{-l, x}, std::pair{x, l}}) {
        if (!(a < b)) continue;
        const QuadratureRule rule = gauss_legendre(quad_n, a, b);
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * k.eval(x, rule.nodes[i]) * f(rule.nodes[i]);
    }
    return acc;
}

} // namespace

Complex weak_ccr_defect(const CtoaKernel& k, const PotentialSpec& v, const PhysicalParams& params,
                        const TestFunction& fa, const TestFunction& fb, int quad_n) {
    params.validate();
    if (params.gamma == 0.0)
        throw std::domain_error("weak_ccr_defect: the weak relation is stated for gamma != 0");
    if (quad_n < 4) throw std::invalid_argument("weak_ccr_defect: quadrature too coarse");

    const double kin = 0.5 * params.hbar * params.hbar / params.mu;
    auto apply_h = [&](const TestFunction& f, double q) {
        return -kin * f.d2(q) + v.eval(q) * f(q);
    };
    auto h_fb = [&](double q) { return apply_h(fb, q); };
    auto fb_plain = [&](double q) { return fb(q); };

    const QuadratureRule outer = gauss_legendre(quad_n, -params.l, params.l);
    Complex defect{0.0, 0.0};
    double overlap = 0.0;
    for (size_t i = 0; i < outer.nodes.size(); ++i) {
        const double x = outer.nodes[i];
        const double w = outer.weights[i];
        defect += w * (apply_h(fa, x) * apply_kernel(k, fb_plain, x, quad_n) -
                       fa(x) * apply_kernel(k, h_fb, x, quad_n));
        overlap += w * fa(x) * fb(x);
    }
    defect -= Complex{0.0, params.hbar} * overlap;
    return defect;
}

double wigner_transform(const TimeKernelField& field, const PhysicalParams& params, double q,
                        double p, double cutoff, int fit_half_degree) {
    params.validate();
    if (p == 0.0) throw std::domain_error("wigner_transform: zero momentum");
    const double l = params.l;
    const double box_limit = std::min(2.0 * (l - std::abs(q)), 2.0 * l);
    if (!(box_limit > 0.0)) throw std::domain_error("wigner_transform: q outside the box");
    if (cutoff <= 0.0) cutoff = 0.8 * box_limit;
    if (cutoff > box_limit + 1e-12)
        throw std::domain_error("wigner_transform: cutoff exceeds box geometry");
    const int nj = fit_half_degree + 1;
    if (nj < 2) throw std::invalid_argument("wigner_transform: fit degree too small");

    // Separation profile g(v) = T(q + v/2, q - v/2); even in v.
    auto g = [&](double v) { return field.eval_uv(2.0 * q, v); };

    // Least-squares even-polynomial fit g(v) ~ sum_j b_j (v/cutoff)^(2j) on
    // Chebyshev sample points of [0, cutoff].
    const int m = 8 * nj;
    Eigen::MatrixXd design(m, nj);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / m));
        rhs(i) = g(s * cutoff);
        double pow_s = 1.0;
        for (int j = 0; j < nj; ++j) {
            design(i, j) = pow_s;
            pow_s *= s * s;
        }
    }
    const Eigen::VectorXd b = design.colPivHouseholderQr().solve(rhs);

    // Regularized sine moments: Int_0^inf v^(2j) sin(av) dv -> (-1)^j (2j)!/a^(2j+1),
    // the limit of the damped oscillatory integral. Anchored so the free
    // profile g = q/2 gives exactly -mu q / p.
    const double a = p / params.hbar;
    double integral = 0.0;
    double fact = 1.0; // (2j)!
    double sign = 1.0;
    for (int j = 0; j < nj; ++j) {
        if (j > 0) fact *= static_cast<double>(2 * j - 1) * (2 * j);
        integral += sign * b(j) * fact / (std::pow(cutoff, 2 * j) * std::pow(a, 2 * j + 1));
        sign = -sign;
    }
    return -2.0 * params.mu / params.hbar * integral;
}

} // namespace ctoa
