#include "ctoa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ctoa {

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x; // recurrence below starts at degree 2
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = 0.5 * (a + b) - 0.5 * (b - a) * x;
        rule.nodes[n - 1 - i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
        rule.weights[i] = 0.5 * (b - a) * w;
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.5 * (a + b); // exact midpoint
    return rule;
}

Eigen::MatrixXcd nystrom_matrix(const CtoaKernel& k, const QuadratureRule& rule) {
    const int n = static_cast<int>(rule.nodes.size());
    Eigen::MatrixXcd b(n, n);
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i) sw[i] = std::sqrt(rule.weights[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b(i, j) = sw[i] * k.eval(rule.nodes[i], rule.nodes[j]) * sw[j];
    return b;
}

std::vector<int> Spectrum::positive_indices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(eigenvalues.size()); ++i)
        if (eigenvalues[i] > 0.0) out.push_back(i);
    return out;
}

Spectrum eigensolve(const Eigen::MatrixXcd& b) {
    const double scale = std::max(b.norm(), 1e-300);
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("eigensolve: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(b);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve: decomposition failed");

    const int n = static_cast<int>(b.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        const double ai = std::abs(ev[i]), aj = std::abs(ev[j]);
        if (ai != aj) return ai > aj;
        return ev[i] > ev[j];
    });
    // +-tau partners agree in magnitude only to roundoff; make sure the
    // positive member of each adjacent pair comes first.
    const double tie = 1e-9 * std::max(1.0, std::abs(ev.cwiseAbs().maxCoeff()));
    for (int c = 0; c + 1 < n; ++c)
        if (std::abs(ev[order[c]] + ev[order[c + 1]]) < tie && ev[order[c]] < ev[order[c + 1]])
            std::swap(order[c], order[c + 1]);

    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    for (int c = 0; c < n; ++c) {
        s.eigenvalues[c] = ev[order[c]];
        s.eigenvectors.col(c) = solver.eigenvectors().col(order[c]);
        const double res = (b * s.eigenvectors.col(c) - s.eigenvalues[c] * s.eigenvectors.col(c)).norm();
        s.max_residual = std::max(s.max_residual, res);
    }
    return s;
}

std::vector<Complex> nystrom_interpolate(const CtoaKernel& k, const QuadratureRule& rule,
                                         const Spectrum& spectrum, int index,
                                         std::span<const double> q_grid) {
    const int n = static_cast<int>(rule.nodes.size());
    if (index < 0 || index >= static_cast<int>(spectrum.eigenvalues.size()))
        throw std::out_of_range("nystrom_interpolate: eigenpair index out of range");
    const double tau = spectrum.eigenvalues[index];
    if (std::abs(tau) <= 1e-12)
        throw std::domain_error("nystrom_interpolate: eigenvalue too close to zero");

    // Node values from the weighted eigenvector.
    std::vector<Complex> phi_nodes(n);
    for (int j = 0; j < n; ++j)
        phi_nodes[j] = spectrum.eigenvectors(j, index) / std::sqrt(rule.weights[j]);

    std::vector<Complex> out(q_grid.size());
    for (size_t g = 0; g < q_grid.size(); ++g) {
        Complex acc{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            acc += rule.weights[j] * k.eval(q_grid[g], rule.nodes[j]) * phi_nodes[j];
        out[g] = acc / tau;
    }

    // Unit trapezoid L2 norm on the output grid.
    if (q_grid.size() >= 2) {
        double norm2 = 0.0;
        for (size_t g = 0; g + 1 < q_grid.size(); ++g) {
            const double dq = q_grid[g + 1] - q_grid[g];
            norm2 += 0.5 * dq * (std::norm(out[g]) + std::norm(out[g + 1]));
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& x : out) x *= inv;
        }
    }
    return out;
}

NodalClass classify_nodal(std::span<const Complex> phi) {
    if (phi.size() < 64) throw std::invalid_argument("classify_nodal: need >= 64 grid points");
    size_t peak = 0;
    double peak_mag = 0.0;
    for (size_t i = 0; i < phi.size(); ++i) {
        if (std::abs(phi[i]) > peak_mag) {
            peak_mag = std::abs(phi[i]);
            peak = i;
        }
    }
    if (peak_mag == 0.0) throw std::invalid_argument("classify_nodal: all-zero input");

    const Complex align = std::exp(Complex{0.0, -std::arg(phi[peak])});
    const double floor = 1e-3 * peak_mag;
    // A node is a sign change of the phase-aligned real part at which the
    // interpolated magnitude dips below the threshold. Interpolating to the
    // crossing keeps nodes that fall between grid points detectable.
    for (size_t i = 1; i + 2 < phi.size(); ++i) {
        const Complex a = align * phi[i], b = align * phi[i + 1];
        if (a.real() == 0.0 && std::abs(phi[i]) < floor) return NodalClass::Nodal;
        if (a.real() * b.real() >= 0.0) continue;
        const double t = a.real() / (a.real() - b.real());
        const Complex cross = (1.0 - t) * a + t * b;
        if (std::abs(cross) < floor) return NodalClass::Nodal;
    }
    return NodalClass::NonNodal;
}

} // namespace ctoa
