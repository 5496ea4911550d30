#include "ctoa/timekernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ctoa {

namespace {

double sinhc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

// sum_{n>=0} z^n / (n! (n+1)!)  — entire, related to I1(2 sqrt z)/sqrt z.
double bessel_like_series(double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < 200; ++n) {
        term *= z / (static_cast<double>(n) * (n + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

} // namespace

TimeKernelField TimeKernelField::closed_form(const PotentialSpec& v, const PhysicalParams& params) {
    params.validate();
    if (!v.is_linear_system())
        throw std::invalid_argument("TimeKernelField: no closed form for degree > 2 potentials");
    TimeKernelField f;
    f.l_ = params.l;
    // The constant and the general-polynomial degree <= 2 cases reduce to the
    // three canonical kinds via V(q) - V(q'); read slope/curvature off coeffs.
    const auto& c = v.coeffs();
    const double a = c.size() > 1 ? c[1] : 0.0;
    const double b = c.size() > 2 ? 2.0 * c[2] : 0.0; // V = .. + b q^2/2
    if (b != 0.0) {
        if (a != 0.0)
            throw std::invalid_argument(
                "TimeKernelField: mixed linear+quadratic closed form not implemented; use goursat_solve");
        // b = mu omega^2  =>  mu omega = sqrt(mu b)
        if (b < 0.0)
            throw std::invalid_argument("TimeKernelField: inverted oscillator not supported");
        f.source_ = Source::ClosedFormHarmonic;
        f.harm_c_ = std::sqrt(params.mu * b) / (2.0 * params.hbar);
    } else if (a != 0.0) {
        f.source_ = Source::ClosedFormLinear;
        f.lin_kappa_ = params.mu * a / (2.0 * params.hbar * params.hbar);
    } else {
        f.source_ = Source::ClosedFormFree;
    }
    return f;
}

double TimeKernelField::eval_uv(double u, double v) const {
    switch (source_) {
        case Source::ClosedFormFree:
            return u / 4.0;
        case Source::ClosedFormHarmonic:
            // T = hbar sinh(mu omega (q^2-q'^2)/(2 hbar)) / (2 mu omega (q-q'))
            //   = (u/4) sinhc(harm_c * u * v)
            return (u / 4.0) * sinhc(harm_c_ * u * v);
        case Source::ClosedFormLinear:
            return (u / 4.0) * bessel_like_series(0.5 * lin_kappa_ * u * v * v);
        case Source::GoursatSolved:
            break;
    }
    // Lagrange cubic interpolation on the uniform characteristic grid,
    // evaluated at |v| so symmetry in q <-> q' is exact.
    v = std::abs(v);
    auto interp_axis = [this](double x) {
        const double t = (x + 2.0 * l_) / h_;
        int base = static_cast<int>(std::floor(t)) - 1;
        base = std::clamp(base, 0, n_u_ - 4);
        return std::pair<int, double>{base, t - base};
    };
    auto [bu, tu] = interp_axis(u);
    auto [bv, tv] = interp_axis(v);
    auto lagrange = [](double t, double f0, double f1, double f2, double f3) {
        return -t * (t - 1) * (t - 2) / 6.0 * f0 + (t + 1) * (t - 1) * (t - 2) / 2.0 * f1 -
               (t + 1) * t * (t - 2) / 2.0 * f2 + (t + 1) * t * (t - 1) / 6.0 * f3;
    };
    double row[4];
    for (int i = 0; i < 4; ++i) {
        row[i] = lagrange(tv - 1.0, grid_value(bu + i, bv), grid_value(bu + i, bv + 1),
                          grid_value(bu + i, bv + 2), grid_value(bu + i, bv + 3));
    }
    return lagrange(tu - 1.0, row[0], row[1], row[2], row[3]);
}

double TimeKernelField::eval(double q, double qp) const {
    const double eps = 1e-12 * l_;
    if (std::abs(q) > l_ + eps || std::abs(qp) > l_ + eps)
        throw std::domain_error("TimeKernelField: point outside [-l,l]^2");
    return eval_uv(q + qp, q - qp);
}

TimeKernelField TimeKernelField::goursat_solve(const PotentialSpec& v, const PhysicalParams& params,
                                               int n_grid) {
    params.validate();
    if (n_grid < 16) throw std::invalid_argument("goursat_solve: n_grid must be >= 16");

    TimeKernelField f;
    f.source_ = Source::GoursatSolved;
    f.l_ = params.l;
    const int n = n_grid;
    const int N = 2 * n + 1;
    f.n_u_ = f.n_v_ = N;
    f.h_ = 2.0 * params.l / n;
    f.values_.assign(static_cast<size_t>(N) * N, 0.0);
    const double h = f.h_;
    const double L = params.l;

    auto vext = [&](double q) {
        if (v.kind() == PotentialKind::Tabulated) q = std::clamp(q, -L, L);
        return v.eval(q);
    };
    const double pref = params.mu / (2.0 * params.hbar * params.hbar);
    auto G = [&](double u, double vv) {
        return pref * (vext(0.5 * (u + vv)) - vext(0.5 * (u - vv)));
    };
    auto u_of = [&](int i) { return -2.0 * L + i * h; };
    auto at = [&](int iu, int iv) -> double& { return f.values_[static_cast<size_t>(iu) * N + iv]; };

    // Characteristic data.
    for (int i = 0; i < N; ++i) at(i, n) = u_of(i) / 4.0;
    for (int j = 0; j < N; ++j) at(n, j) = 0.0;

    // March upward in v; cell update from the exact four-corner identity
    // T22 - T21 - T12 + T11 = Int_cell G T, midpoint rule with two
    // fixed-point sweeps on the unknown corner.
    for (int j = n; j < N - 1; ++j) {
        const double v_mid = u_of(j) + 0.5 * h; // v grid shares spacing/offset with u
        // right half: unknown corner top-right
        for (int i = n; i < N - 1; ++i) {
            const double g = G(u_of(i) + 0.5 * h, v_mid);
            const double t11 = at(i, j), t21 = at(i + 1, j), t12 = at(i, j + 1);
            double unknown = t21 + t12 - t11; // source-free predictor
            for (int sweep = 0; sweep < 2; ++sweep) {
                const double t_mid = 0.25 * (t11 + t21 + t12 + unknown);
                unknown = t21 + t12 - t11 + h * h * g * t_mid;
            }
            if (!std::isfinite(unknown))
                throw std::runtime_error("goursat_solve: field diverged (non-finite growth)");
            at(i + 1, j + 1) = unknown;
        }
        // left half: unknown corner top-left
        for (int i = n; i > 0; --i) {
            const double g = G(u_of(i) - 0.5 * h, v_mid);
            const double t11 = at(i - 1, j), t21 = at(i, j), t22 = at(i, j + 1);
            double unknown = t22 - t21 + t11;
            for (int sweep = 0; sweep < 2; ++sweep) {
                const double t_mid = 0.25 * (t11 + t21 + t22 + unknown);
                unknown = t22 - t21 + t11 - h * h * g * t_mid;
            }
            if (!std::isfinite(unknown))
                throw std::runtime_error("goursat_solve: field diverged (non-finite growth)");
            at(i - 1, j + 1) = unknown;
        }
    }

    // The source term is even in v, so the field is mirrored instead of
    // solved twice; evenness then holds exactly on the grid.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < N; ++i) at(i, j) = at(i, 2 * n - j);

    return f;
}

double pde_residual(const TimeKernelField& field, const PotentialSpec& v,
                    const PhysicalParams& params, int n) {
    if (n < 5) throw std::invalid_argument("pde_residual: need >= 5 points per direction");
    const double L = params.l;
    const double d = 2.0 * L / (n - 1);
    std::vector<double> t(static_cast<size_t>(n) * n);
    std::vector<double> pot(n);
    for (int i = 0; i < n; ++i) {
        const double qi = -L + i * d;
        pot[i] = v.eval(qi);
        for (int j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = field.eval(qi, -L + j * d);
    }
    const double kin = 0.5 * params.hbar * params.hbar / params.mu;
    double worst = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            auto T = [&](int a, int b) { return t[static_cast<size_t>(a) * n + b]; };
            const double tqq = (T(i + 1, j) - 2 * T(i, j) + T(i - 1, j)) / (d * d);
            const double tpp = (T(i, j + 1) - 2 * T(i, j) + T(i, j - 1)) / (d * d);
            const double r = -kin * tqq + kin * tpp + (pot[i] - pot[j]) * T(i, j);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

TimeKernelField TimeKernelField::sampled(int n_grid) const {
    if (has_grid()) return *this;
    TimeKernelField f;
    f.source_ = Source::GoursatSolved;
    f.l_ = l_;
    const int N = 2 * n_grid + 1;
    f.n_u_ = f.n_v_ = N;
    f.h_ = 2.0 * l_ / n_grid;
    f.values_.resize(static_cast<size_t>(N) * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            f.values_[static_cast<size_t>(i) * N + j] =
                eval_uv(-2.0 * l_ + i * f.h_, -2.0 * l_ + j * f.h_);
    return f;
}

void TimeKernelField::export_csv(std::ostream& os, int n_grid) const {
    const TimeKernelField g = sampled(n_grid);
    os.precision(17);
    os << "l,h_u,h_v,n_u,n_v\n"
       << g.l_ << ',' << g.h_ << ',' << g.h_ << ',' << g.n_u_ << ',' << g.n_v_ << '\n';
    for (int i = 0; i < g.n_u_; ++i) {
        for (int j = 0; j < g.n_v_; ++j) os << (j ? "," : "") << g.grid_value(i, j);
        os << '\n';
    }
}

TimeKernelField TimeKernelField::import_csv(std::istream& is) {
    std::string header, line;
    std::getline(is, header);
    if (header.rfind("l,h_u", 0) != 0) throw std::runtime_error("kernel import: bad CSV header");
    std::getline(is, line);
    TimeKernelField f;
    f.source_ = Source::GoursatSolved;
    double hv;
    char comma;
    std::istringstream hs(line);
    hs >> f.l_ >> comma >> f.h_ >> comma >> hv >> comma >> f.n_u_ >> comma >> f.n_v_;
    if (!hs || f.n_u_ < 5 || f.n_v_ < 5 || f.h_ <= 0)
        throw std::runtime_error("kernel import: malformed CSV header line");
    f.values_.reserve(static_cast<size_t>(f.n_u_) * f.n_v_);
    for (int i = 0; i < f.n_u_; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("kernel import: truncated CSV");
        std::istringstream ls(line);
        double x;
        while (ls >> x) {
            f.values_.push_back(x);
            ls >> comma;
        }
    }
    if (f.values_.size() != static_cast<size_t>(f.n_u_) * f.n_v_)
        throw std::runtime_error("kernel import: value count mismatch");
    return f;
}

namespace {
constexpr char kMagic[8] = {'C', 'T', 'O', 'A', 'K', 'R', 'N', '1'};
}

void TimeKernelField::export_binary(std::ostream& os, int n_grid) const {
    const TimeKernelField g = sampled(n_grid);
    os.write(kMagic, 8);
    const double hdr[3] = {g.l_, g.h_, g.h_};
    const std::uint64_t dims[2] = {static_cast<std::uint64_t>(g.n_u_),
                                   static_cast<std::uint64_t>(g.n_v_)};
    os.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
    os.write(reinterpret_cast<const char*>(dims), sizeof dims);
    os.write(reinterpret_cast<const char*>(g.values_.data()),
             static_cast<std::streamsize>(g.values_.size() * sizeof(double)));
}

TimeKernelField TimeKernelField::import_binary(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || !std::equal(magic, magic + 8, kMagic))
        throw std::runtime_error("kernel import: bad binary magic");
    double hdr[3];
    std::uint64_t dims[2];
    is.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    is.read(reinterpret_cast<char*>(dims), sizeof dims);
    TimeKernelField f;
    f.source_ = Source::GoursatSolved;
    f.l_ = hdr[0];
    f.h_ = hdr[1];
    f.n_u_ = static_cast<int>(dims[0]);
    f.n_v_ = static_cast<int>(dims[1]);
    if (!is || f.n_u_ < 5 || f.n_v_ < 5 || f.h_ <= 0)
        throw std::runtime_error("kernel import: malformed binary header");
    f.values_.resize(static_cast<size_t>(f.n_u_) * f.n_v_);
    is.read(reinterpret_cast<char*>(f.values_.data()),
            static_cast<std::streamsize>(f.values_.size() * sizeof(double)));
    if (!is) throw std::runtime_error("kernel import: truncated binary payload");
    return f;
}

} // namespace ctoa
