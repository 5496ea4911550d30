// ctoa: command-line driver for confined time-of-arrival experiments.
//
//   ctoa <kernel|spectrum|evolve|verify|reproduce-fig1>
//        [--config FILE | --preset NAME] [--out DIR] [--index N ...]
//
// Exit codes: 0 success, 1 configuration error, 2 numeric failure,
// 3 acceptance-check failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctoa/classical.hpp"
#include "ctoa/config.hpp"
#include "ctoa/dynamics.hpp"
#include "ctoa/operator.hpp"
#include "ctoa/spectral.hpp"
#include "ctoa/timekernel.hpp"
#include "ctoa/verify.hpp"

namespace fs = std::filesystem;
using namespace ctoa;

namespace {

struct Session {
    RunConfig cfg;
    fs::path out;
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open output file " + p.string());
    os.precision(17);
    return os;
}

TimeKernelField build_field(const RunConfig& cfg) {
    const auto v = cfg.make_potential();
    if (v.is_linear_system()) return TimeKernelField::closed_form(v, cfg.physical());
    return TimeKernelField::goursat_solve(v, cfg.physical(), cfg.goursat_n);
}

void write_config(const Session& s) {
    open_out(s.out / "config.txt") << serialize(s.cfg);
}

int cmd_kernel(const Session& s) {
    const auto field = build_field(s.cfg);
    auto os = open_out(s.out / "kernel.csv");
    field.export_csv(os, std::max(s.cfg.goursat_n, 128));
    const double residual = pde_residual(field, s.cfg.make_potential(), s.cfg.physical(), 120);
    open_out(s.out / "kernel_residual.txt") << residual << "\n";
    std::cout << "kernel: grid written, pde residual " << residual << "\n";
    return 0;
}

struct SpectrumBundle {
    CtoaKernel kernel;
    QuadratureRule rule;
    Spectrum spec;
};

SpectrumBundle solve_spectrum(const RunConfig& cfg) {
    CtoaKernel kernel(build_field(cfg), cfg.physical());
    QuadratureRule rule = gauss_legendre(cfg.nystrom_n, -cfg.l, cfg.l);
    Spectrum spec = eigensolve(nystrom_matrix(kernel, rule));
    return {std::move(kernel), std::move(rule), std::move(spec)};
}

std::vector<double> uniform_grid(double l, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = -l + 2.0 * l * i / (n - 1);
    return g;
}

int cmd_spectrum(const Session& s, const std::vector<int>& indices) {
    const auto b = solve_spectrum(s.cfg);
    const auto grid = uniform_grid(s.cfg.l, 257);

    auto os = open_out(s.out / "eigenvalues.csv");
    os << "index,tau,nodal_class\n";
    for (size_t i = 0; i < b.spec.eigenvalues.size(); ++i) {
        std::string cls = "-";
        if (std::abs(b.spec.eigenvalues[i]) > 1e-12) {
            const auto phi = nystrom_interpolate(b.kernel, b.rule, b.spec, static_cast<int>(i),
                                                 grid);
            cls = classify_nodal(phi) == NodalClass::Nodal ? "nodal" : "nonnodal";
        }
        os << i << "," << b.spec.eigenvalues[i] << "," << cls << "\n";
    }

    for (int idx : indices) {
        const auto phi = nystrom_interpolate(b.kernel, b.rule, b.spec, idx, grid);
        auto fo = open_out(s.out / ("eigenfunction_" + std::to_string(idx) + ".csv"));
        fo << "q,re,im\n";
        for (size_t i = 0; i < grid.size(); ++i)
            fo << grid[i] << "," << phi[i].real() << "," << phi[i].imag() << "\n";
    }
    std::cout << "spectrum: " << b.spec.eigenvalues.size() << " eigenvalues, max residual "
              << b.spec.max_residual << "\n";
    return 0;
}

int cmd_evolve(const Session& s, std::vector<int> indices) {
    const auto b = solve_spectrum(s.cfg);
    const auto pos = b.spec.positive_indices();
    if (pos.empty()) throw std::runtime_error("no positive eigenvalues to evolve");
    if (indices.empty()) indices = {pos[0]};

    const auto v = s.cfg.make_potential();
    const auto h = hamiltonian_matrix(v, s.cfg.physical(), s.cfg.dynamics_n);
    auto summary = open_out(s.out / "arrival.csv");
    summary << "index,tau,t_star,t_star_over_tau,var_min,mean_q_at_t_star,boundary_flag\n";

    for (int idx : indices) {
        const double tau = b.spec.eigenvalues[static_cast<size_t>(idx)];
        if (std::abs(tau) < 1e-12) throw std::runtime_error("cannot evolve a null eigenvalue");
        const auto phi = nystrom_interpolate(b.kernel, b.rule, b.spec, idx, h.grid);
        Eigen::VectorXcd psi(static_cast<Eigen::Index>(phi.size()));
        for (size_t i = 0; i < phi.size(); ++i) psi[static_cast<Eigen::Index>(i)] = phi[i];
        psi /= std::sqrt(h.dq) * psi.norm();

        const double dt = s.cfg.dt > 0 ? s.cfg.dt : std::abs(tau) / 200.0;
        const int steps = std::max(1, static_cast<int>(std::lround(
                                           s.cfg.run_mult * std::abs(tau) / dt)));
        const auto trace =
            crank_nicolson_evolve(h, psi, dt, steps, s.cfg.snapshot_stride);
        const auto arrival = detect_arrival(trace);

        auto to = open_out(s.out / ("trace_" + std::to_string(idx) + ".csv"));
        to << "t,norm,mean_q,var_q\n";
        for (size_t i = 0; i < trace.times.size(); ++i)
            to << trace.times[i] << "," << trace.norm[i] << "," << trace.mean_q[i] << ","
               << trace.var_q[i] << "\n";

        if (!trace.snapshots.empty()) {
            auto so = open_out(s.out / ("density_" + std::to_string(idx) + ".csv"));
            so << "t";
            for (double q : h.grid) so << "," << q;
            so << "\n";
            for (const auto& [t, rho] : trace.snapshots) {
                so << t;
                for (double r : rho) so << "," << r;
                so << "\n";
            }
        }

        summary << idx << "," << tau << "," << arrival.t_star << "," << arrival.t_star / tau
                << "," << arrival.var_min << "," << arrival.mean_at_t_star << ","
                << (arrival.boundary_flag ? 1 : 0) << "\n";
        std::cout << "evolve[" << idx << "]: tau=" << tau << " t*=" << arrival.t_star
                  << " t*/tau=" << arrival.t_star / tau << "\n";
    }
    return 0;
}

int cmd_verify(const Session& s) {
    const auto params = s.cfg.physical();
    const auto v = s.cfg.make_potential();
    const auto field = build_field(s.cfg);
    const CtoaKernel kernel(field, params);

    nlohmann::json rep;
    bool ok = true;

    const double herm = hermiticity_defect(kernel, 48);
    rep["hermiticity_defect"] = herm;
    ok = ok && herm < 1e-9;

    const double residual = pde_residual(field, v, params, 120);
    rep["pde_residual"] = residual;

    if (!params.periodic()) {
        const auto fa = TestFunction::bump(3, {1.0}, params.l);
        const auto fb = TestFunction::bump(3, {0.0, 1.0}, params.l);
        const auto d = weak_ccr_defect(kernel, v, params, fa, fb, 64);
        rep["weak_ccr_defect"] = std::abs(d);
        ok = ok && std::abs(d) < 1e-3;
    }

    // Phase-space symbol against the classical local time where both exist.
    if (v.degree() >= 0) {
        const auto series = ltoa_terms(v, params, 10);
        double worst = 0.0;
        int used = 0;
        for (double q : {0.1 * params.l, 0.2 * params.l, 0.3 * params.l})
            for (double p : {1.2, 1.6}) {
                double classical;
                try {
                    classical = ltoa_eval(series, q, p);
                } catch (const std::exception&) {
                    continue;
                }
                worst = std::max(worst,
                                 std::abs(wigner_transform(field, params, q, p) - classical));
                ++used;
            }
        rep["wigner_vs_local_toa"] = worst;
        rep["wigner_points"] = used;
        // Anharmonic symbols carry an O(hbar^2) quantum correction, so the
        // classical comparison only gates linear systems.
        if (v.is_linear_system()) ok = ok && (used == 0 || worst < 5e-3);
    }

    rep["pass"] = ok;
    open_out(s.out / "verify.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return ok ? 0 : 3;
}

int cmd_reproduce_fig1(Session s) {
    // Fixed pipeline on the harmonic benchmark: spectrum head, nodal
    // classes, and unitary arrival of the leading eigenfunction.
    cmd_kernel(s);
    cmd_spectrum(s, {});
    const auto b = solve_spectrum(s.cfg);
    const auto pos = b.spec.positive_indices();
    if (pos.size() < 6) throw std::runtime_error("spectrum too short for the benchmark pair");
    cmd_evolve(s, {pos[4], pos[5]});

    const double t0 = b.spec.eigenvalues[static_cast<size_t>(pos[4])];
    const double t1 = b.spec.eigenvalues[static_cast<size_t>(pos[5])];
    const auto grid = uniform_grid(s.cfg.l, 257);
    const auto phi0 = nystrom_interpolate(b.kernel, b.rule, b.spec, pos[4], grid);
    const auto phi1 = nystrom_interpolate(b.kernel, b.rule, b.spec, pos[5], grid);

    // Re-read the arrival summary produced above for the leading mode.
    double ratio = 0.0, mean_q = 1.0;
    {
        std::ifstream in(s.out / "arrival.csv");
        std::string line;
        std::getline(in, line); // header
        std::getline(in, line);
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ls, tok, ',')) cols.push_back(tok);
        if (cols.size() >= 6) {
            ratio = std::stod(cols[3]);
            mean_q = std::stod(cols[5]);
        }
    }

    const bool ok = std::abs(t0 - 0.0336) < 1e-3 && std::abs(t1 - 0.0303) < 1e-3 &&
                    classify_nodal(phi0) == NodalClass::NonNodal &&
                    classify_nodal(phi1) == NodalClass::Nodal && ratio > 0.9 && ratio < 1.1 &&
                    std::abs(mean_q) < 0.05;
    nlohmann::json rep{{"tau0", t0},       {"tau1", t1},   {"t_star_over_tau", ratio},
                       {"mean_q", mean_q}, {"pass", ok}};
    open_out(s.out / "fig1_summary.json") << rep.dump(2) << "\n";
    std::cout << rep.dump(2) << "\n";
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"confined time-of-arrival operator toolkit"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir;
    std::vector<int> indices;
    app.add_option("--config", config_path, "configuration file (key=value)");
    app.add_option("--preset", preset_name, "named preset")->excludes("--config");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--index", indices, "eigenpair indices for spectrum/evolve");

    auto* c_kernel = app.add_subcommand("kernel", "solve and dump the time kernel T(q,q')");
    auto* c_spectrum = app.add_subcommand("spectrum", "arrival-time spectrum and eigenfunctions");
    auto* c_evolve = app.add_subcommand("evolve", "Crank-Nicolson evolution of eigenfunctions");
    auto* c_verify = app.add_subcommand("verify", "consistency checks, JSON report");
    auto* c_fig1 = app.add_subcommand("reproduce-fig1", "harmonic benchmark pipeline");
    for (auto* sub : {c_kernel, c_spectrum, c_evolve, c_verify, c_fig1}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    Session s;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot read config file " + config_path);
            std::stringstream buf;
            buf << in.rdbuf();
            s.cfg = parse_config(buf.str());
        } else if (!preset_name.empty()) {
            s.cfg = preset(preset_name);
        } else if (app.got_subcommand(c_fig1)) {
            s.cfg = preset("fig1-harmonic");
        } else {
            s.cfg = RunConfig{};
        }
        if (!out_dir.empty()) s.cfg.out = out_dir;
        s.out = s.cfg.out;
        fs::create_directories(s.out);
        write_config(s);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(c_kernel)) return cmd_kernel(s);
        if (app.got_subcommand(c_spectrum)) return cmd_spectrum(s, indices);
        if (app.got_subcommand(c_evolve)) return cmd_evolve(s, indices);
        if (app.got_subcommand(c_verify)) return cmd_verify(s);
        if (app.got_subcommand(c_fig1)) return cmd_reproduce_fig1(s);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
