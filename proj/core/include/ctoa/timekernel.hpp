#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctoa/params.hpp"
#include "ctoa/potential.hpp"

namespace ctoa {

/// The real symmetric two-point function T(q,q') that enters every CTOA
/// kernel. It solves the hyperbolic characteristic-coordinate problem
///   d2T/dudv = (mu/2hbar^2) [V((u+v)/2) - V((u-v)/2)] T,
///   T(u,0) = u/4,  T(0,v) = 0,
/// with u = q+q', v = q-q'. Linear systems (deg V <= 2) have closed forms;
/// anything else is marched on a grid and evaluated by cubic interpolation.
class TimeKernelField {
public:
    enum class Source { ClosedFormFree, ClosedFormLinear, ClosedFormHarmonic, GoursatSolved };

    /// Exact evaluator for a linear system (throws for degree > 2).
    static TimeKernelField closed_form(const PotentialSpec& v, const PhysicalParams& params);

    /// Second-order Goursat marching on a (2n+1)^2 characteristic grid
    /// covering [-2l,2l]^2. Polynomial potentials are evaluated naturally
    /// outside the box where the extended grid needs them; tabulated ones
    /// are clamped to their sample range.
    static TimeKernelField goursat_solve(const PotentialSpec& v, const PhysicalParams& params,
                                         int n_grid);

    Source source() const { return source_; }
    double l() const { return l_; }
    bool has_grid() const { return !values_.empty(); }
    int n_u() const { return n_u_; }
    int n_v() const { return n_v_; }
    double h_u() const { return h_; }
    double h_v() const { return h_; }
    double grid_value(int iu, int iv) const { return values_[static_cast<size_t>(iu) * n_v_ + iv]; }

    /// T at (q, q'); symmetric in the arguments by construction.
    double eval(double q, double qp) const;
    /// T in characteristic coordinates (used internally and by transforms).
    double eval_uv(double u, double v) const;

    /// Grid dump for caching expensive solves. Closed forms are sampled
    /// onto a grid first (n_grid cells per half-axis).
    void export_csv(std::ostream& os, int n_grid = 128) const;
    void export_binary(std::ostream& os, int n_grid = 128) const;
    static TimeKernelField import_csv(std::istream& is);
    static TimeKernelField import_binary(std::istream& is);

private:
    TimeKernelField() = default;
    TimeKernelField sampled(int n_grid) const;

    Source source_ = Source::ClosedFormFree;
    double l_ = 1.0;
    double harm_c_ = 0.0;   // mu*omega/(2 hbar)
    double lin_kappa_ = 0.0; // mu*lambda/(2 hbar^2)

    int n_u_ = 0, n_v_ = 0;
    double h_ = 0.0;
    std::vector<double> values_; // row-major over (iu, iv)
};

inline double kernel_eval(const TimeKernelField& field, double q, double qp) {
    return field.eval(q, qp);
}

/// Max-abs residual of the defining PDE
///   -(hbar^2/2mu) T_qq + (hbar^2/2mu) T_q'q' + (V(q)-V(q')) T
/// over the interior of an n x n sample of [-l,l]^2, by centered
/// differences. Zero only up to finite-difference truncation.
double pde_residual(const TimeKernelField& field, const PotentialSpec& v,
                    const PhysicalParams& params, int n = 200);

} // namespace ctoa
