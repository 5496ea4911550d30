#include "ctoa/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace ctoa {

namespace {

// Gauss-Kronrod 7-15 pair on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct Gk15Result {
    double value;
    double error;
};

Gk15Result gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int i = 1; i < 8; ++i) {
        fv[7 - i] = f(c - h * kKronrodNodes[i]);
        fv[7 + i] = f(c + h * kKronrodNodes[i]);
    }
    double kron = kKronrodWeights[0] * fv[7];
    for (int i = 1; i < 8; ++i) kron += kKronrodWeights[i] * (fv[7 - i] + fv[7 + i]);
    // Gauss-7 uses the odd Kronrod nodes.
    double gauss = kGaussWeights[0] * fv[7];
    for (int i = 1; i < 4; ++i)
        gauss += kGaussWeights[i] * (fv[7 - 2 * i] + fv[7 + 2 * i]);
    return {kron * h, std::abs(kron - gauss) * h};
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b, double tol,
                     int depth = 0) {
    auto r = gk15(f, a, b);
    if (r.error < tol || depth > 40) return r.value;
    const double c = 0.5 * (a + b);
    return adaptive_quad(f, a, c, tol / 2, depth + 1) + adaptive_quad(f, c, b, tol / 2, depth + 1);
}

} // namespace

double classical_toa(const PotentialSpec& v, const PhysicalParams& params, double q, double p) {
    params.validate();
    if (p == 0.0) throw std::domain_error("classical_toa: zero momentum");
    if (q == 0.0) return 0.0;
    const double mu = params.mu;
    const double energy = 0.5 * p * p / mu + v.eval(q);

    // Substitute q' = q(1 - t^2) so the inverse-square-root behavior that
    // appears when H - V vanishes at q' = q becomes a bounded integrand.
    auto integrand = [&](double t) {
        const double qp = q * (1.0 - t * t);
        const double g = energy - v.eval(qp);
        if (g <= 0.0)
            throw std::domain_error("classical_toa: classically forbidden path (no real arrival)");
        return 2.0 * q * t / std::sqrt(g);
    };
    const double integral = adaptive_quad(integrand, 0.0, 1.0, 1e-12);
    const double sgn_p = (p > 0.0) ? 1.0 : -1.0;
    return -sgn_p * std::sqrt(0.5 * mu) * integral;
}

namespace {

struct State {
    double q, p;
};

State rk4_step(const PotentialSpec& v, double mu, State s, double h) {
    auto f = [&](State y) { return State{y.p / mu, -v.derivative(y.q)}; };
    State k1 = f(s);
    State k2 = f({s.q + 0.5 * h * k1.q, s.p + 0.5 * h * k1.p});
    State k3 = f({s.q + 0.5 * h * k2.q, s.p + 0.5 * h * k2.p});
    State k4 = f({s.q + h * k3.q, s.p + h * k3.p});
    return {s.q + h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q),
            s.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

} // namespace

std::optional<double> classical_arrival_ode(const PotentialSpec& v, const PhysicalParams& params,
                                            double q0, double p0, double t_max) {
    params.validate();
    if (!(t_max > 0.0)) throw std::invalid_argument("classical_arrival_ode: t_max must be positive");
    const double h = t_max / 1e4;
    if (!(h > 0.0)) throw std::runtime_error("classical_arrival_ode: step-size underflow");

    State s{q0, p0};
    double t = 0.0;
    while (t < t_max) {
        State next = rk4_step(v, params.mu, s, h);
        const double t_next = t + h;
        if (s.q == 0.0 || next.q == 0.0 || (s.q > 0) != (next.q > 0)) {
            // Bisection on the substep, re-integrating from the bracketing state.
            double lo = 0.0, hi = h;
            for (int i = 0; i < 80 && hi - lo > 1e-16 * t_max; ++i) {
                const double mid = 0.5 * (lo + hi);
                State sm = rk4_step(v, params.mu, s, mid);
                if ((s.q > 0) == (sm.q > 0) && sm.q != 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            const double t_cross = t + 0.5 * (lo + hi);
            if (t_cross > 0.0 && t_cross <= t_max) return t_cross;
        }
        s = next;
        t = t_next;
    }
    return std::nullopt;
}

LtoaSeries ltoa_terms(const PotentialSpec& v, const PhysicalParams& params, int K) {
    params.validate();
    if (v.kind() == PotentialKind::Tabulated)
        throw std::invalid_argument("ltoa_terms: polynomial potentials only");
    if (K < 0) throw std::invalid_argument("ltoa_terms: K must be >= 0");
    const double mu = params.mu;
    const auto& c = v.coeffs();

    std::map<std::pair<int, int>, double> acc; // (q_pow, p_inv_pow) -> coeff
    std::vector<LtoaTerm> current{{1, 1, -mu}}; // T_0 = -mu q / p
    acc[{1, 1}] = -mu;

    double sign = 1.0;
    for (int k = 1; k <= K; ++k) {
        sign = -sign;
        std::map<std::pair<int, int>, double> next;
        for (const auto& term : current) {
            // dT/dp then multiply by each monomial of dV/dq and integrate.
            for (size_t i = 1; i < c.size(); ++i) {
                if (c[i] == 0.0) continue;
                const int n = term.q_pow + static_cast<int>(i);
                const int m = term.p_inv_pow + 2;
                const double coeff = -mu * term.coeff * (-term.p_inv_pow) *
                                     static_cast<double>(i) * c[i] / static_cast<double>(n);
                next[{n, m}] += coeff;
            }
        }
        current.clear();
        for (const auto& [key, coeff] : next) {
            if (coeff == 0.0) continue;
            current.push_back({key.first, key.second, coeff});
            acc[key] += sign * coeff;
        }
        if (current.empty()) break; // recursion terminated exactly (e.g. free)
    }

    LtoaSeries out;
    out.order = K;
    for (const auto& [key, coeff] : acc)
        if (coeff != 0.0) out.terms.push_back({key.first, key.second, coeff});
    return out;
}

double ltoa_eval(const LtoaSeries& series, double q, double p) {
    if (p == 0.0) throw std::domain_error("ltoa_eval: zero momentum");
    double acc = 0.0;
    for (const auto& t : series.terms)
        acc += t.coeff * std::pow(q, t.q_pow) * std::pow(p, -t.p_inv_pow);
    return acc;
}

} // namespace ctoa
