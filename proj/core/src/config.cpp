#include "ctoa/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ctoa {

PotentialSpec RunConfig::make_potential() const {
    if (potential == "free") return PotentialSpec::free();
    if (potential == "linear") return PotentialSpec::linear(lambda);
    if (potential == "harmonic") return PotentialSpec::harmonic(omega, mu);
    if (potential == "polynomial") return PotentialSpec::polynomial(coeffs);
    throw std::invalid_argument("RunConfig: unknown potential kind '" + potential + "'");
}

namespace {

double parse_double(const std::string& v, const std::string& key, int line,
                    std::vector<std::string>& errors) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (const std::exception&) {
        errors.push_back("line " + std::to_string(line) + ": key '" + key +
                         "' expects a number, got '" + v + "'");
        return 0.0;
    }
}

int parse_int(const std::string& v, const std::string& key, int line,
              std::vector<std::string>& errors) {
    const double x = parse_double(v, key, line, errors);
    if (x != std::floor(x)) {
        errors.push_back("line " + std::to_string(line) + ": key '" + key + "' expects an integer");
        return 0;
    }
    return static_cast<int>(x);
}

void validate(const RunConfig& cfg, std::vector<std::string>& errors) {
    if (!(cfg.mu > 0)) errors.push_back("constraint: mu must be positive");
    if (!(cfg.hbar > 0)) errors.push_back("constraint: hbar must be positive");
    if (!(cfg.l > 0)) errors.push_back("constraint: l must be positive");
    if (!(std::abs(cfg.gamma) < std::numbers::pi))
        errors.push_back("constraint: |gamma| must be < pi");
    if (cfg.potential != "free" && cfg.potential != "linear" && cfg.potential != "harmonic" &&
        cfg.potential != "polynomial")
        errors.push_back("constraint: potential must be free|linear|harmonic|polynomial");
    if (cfg.goursat_n < 16) errors.push_back("constraint: goursat_n must be >= 16");
    if (cfg.nystrom_n < 2) errors.push_back("constraint: nystrom_n must be >= 2");
    if (cfg.dynamics_n < 16) errors.push_back("constraint: dynamics_n must be >= 16");
    if (cfg.dt < 0) errors.push_back("constraint: dt must be >= 0 (0 = auto)");
    if (!(cfg.run_mult > 0)) errors.push_back("constraint: run_mult must be positive");
    if (cfg.snapshot_stride < 0) errors.push_back("constraint: snapshot_stride must be >= 0");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errors;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key=value, got '" +
                             line + "'");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "mu") cfg.mu = parse_double(value, key, lineno, errors);
        else if (key == "hbar") cfg.hbar = parse_double(value, key, lineno, errors);
        else if (key == "l") cfg.l = parse_double(value, key, lineno, errors);
        else if (key == "gamma") cfg.gamma = parse_double(value, key, lineno, errors);
        else if (key == "potential") cfg.potential = value;
        else if (key == "lambda") cfg.lambda = parse_double(value, key, lineno, errors);
        else if (key == "omega") cfg.omega = parse_double(value, key, lineno, errors);
        else if (key == "coeffs") {
            cfg.coeffs.clear();
            std::istringstream cs(value);
            std::string tok;
            while (std::getline(cs, tok, ','))
                cfg.coeffs.push_back(parse_double(trim(tok), key, lineno, errors));
        } else if (key == "goursat_n") cfg.goursat_n = parse_int(value, key, lineno, errors);
        else if (key == "nystrom_n") cfg.nystrom_n = parse_int(value, key, lineno, errors);
        else if (key == "dynamics_n") cfg.dynamics_n = parse_int(value, key, lineno, errors);
        else if (key == "dt") cfg.dt = parse_double(value, key, lineno, errors);
        else if (key == "run_mult") cfg.run_mult = parse_double(value, key, lineno, errors);
        else if (key == "snapshot_stride") cfg.snapshot_stride = parse_int(value, key, lineno, errors);
        else if (key == "out") cfg.out = value;
        else errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    validate(cfg, errors);
    if (!errors.empty()) {
        std::string msg = "config errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return cfg;
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    if (name == "fig1-harmonic") {
        cfg.potential = "harmonic";
        cfg.omega = 1.0;
        cfg.nystrom_n = 128; // the benchmark pair n=5,6 needs this resolution
    } else if (name == "linear-lambda1") {
        cfg.potential = "linear";
        cfg.lambda = 1.0;
    } else if (name == "free-box") {
        cfg.potential = "free";
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (available: fig1-harmonic, linear-lambda1, free-box)");
    }
    return cfg;
}

std::string serialize(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "mu=" << cfg.mu << "\nhbar=" << cfg.hbar << "\nl=" << cfg.l << "\ngamma=" << cfg.gamma
       << "\npotential=" << cfg.potential << "\nlambda=" << cfg.lambda << "\nomega=" << cfg.omega;
    if (!cfg.coeffs.empty()) {
        os << "\ncoeffs=";
        for (size_t i = 0; i < cfg.coeffs.size(); ++i) os << (i ? "," : "") << cfg.coeffs[i];
    }
    os << "\ngoursat_n=" << cfg.goursat_n << "\nnystrom_n=" << cfg.nystrom_n
       << "\ndynamics_n=" << cfg.dynamics_n << "\ndt=" << cfg.dt << "\nrun_mult=" << cfg.run_mult
       << "\nsnapshot_stride=" << cfg.snapshot_stride << "\nout=" << cfg.out << "\n";
    return os.str();
}

} // namespace ctoa
