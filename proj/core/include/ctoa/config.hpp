#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "ctoa/params.hpp"
#include "ctoa/potential.hpp"

namespace ctoa {

/// Flat, fully deterministic experiment configuration. Parsed from a
/// key=value text; unknown keys are rejected and every constraint violation
/// is reported at once.
struct RunConfig {
    double mu = 1.0;
    double hbar = 1.0;
    double l = 1.0;
    double gamma = std::numbers::pi / 2;

    std::string potential = "free"; // free | linear | harmonic | polynomial
    double lambda = 1.0;
    double omega = 1.0;
    std::vector<double> coeffs; // for potential=polynomial

    int goursat_n = 192;
    int nystrom_n = 64;
    int dynamics_n = 512;
    double dt = 0.0;        // 0 selects tau/200 per evolved eigenfunction
    double run_mult = 2.0;  // run length = run_mult * tau
    int snapshot_stride = 10;
    std::string out = "out";

    PhysicalParams physical() const { return {mu, hbar, l, gamma}; }
    PotentialSpec make_potential() const;
};

RunConfig parse_config(const std::string& text);
/// Shipped presets: fig1-harmonic, linear-lambda1, free-box.
RunConfig preset(const std::string& name);
std::string serialize(const RunConfig& cfg);

} // namespace ctoa
