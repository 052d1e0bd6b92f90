#include "prion/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "prion/errors.hpp"
#include "prion/io.hpp"

namespace prion {

Regime ScenarioConfig::resolved_regime() const {
    switch (regime) {
    case RegimeChoice::disease_free: return Regime::disease_free;
    case RegimeChoice::disease: return Regime::disease;
    case RegimeChoice::automatic:
    default:
        return params.threshold_ratio() > 1.0 ? Regime::disease : Regime::disease_free;
    }
}

double ScenarioConfig::resolved_x_max() const {
    return x_max > 0.0 ? x_max : params.x0 + 25.0 * params.mu0() / params.beta;
}

double ScenarioConfig::resolved_initial_V() const {
    return initial_V >= 0.0 ? initial_V : params.lambda / params.gamma;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line) {
    std::size_t used = 0;
    double out;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected a number, got '" + v + "'");
    }
    if (used != v.size()) throw ParseError(line, "trailing characters after number in '" + v + "'");
    if (!std::isfinite(out)) throw ParseError(line, "number out of range: '" + v + "'");
    return out;
}

int parse_int(const std::string& v, int line) {
    const double d = parse_number(v, line);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) throw ParseError(line, "expected an integer, got '" + v + "'");
    return i;
}

/// Parses `name(arg1, arg2, ...)`; plain `name` yields no args.
std::pair<std::string, std::vector<double>> parse_call(const std::string& v, int line) {
    const auto open = v.find('(');
    if (open == std::string::npos) return {trim(v), {}};
    if (v.back() != ')') throw ParseError(line, "missing ')' in '" + v + "'");
    const std::string name = trim(v.substr(0, open));
    std::vector<double> args;
    std::string inner = v.substr(open + 1, v.size() - open - 2);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(parse_number(trim(item), line));
    return {name, args};
}

DensityProfile parse_profile(const std::string& v, int line) {
    auto [name, args] = parse_call(v, line);
    DensityProfile p;
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw ParseError(line, "profile '" + name + "' takes " + std::to_string(n) +
                                       " arguments, got " + std::to_string(args.size()));
    };
    if (name == "zero") {
        want(0);
        p.kind = DensityProfile::Kind::zero;
    } else if (name == "indicator") {
        want(3);
        p.kind = DensityProfile::Kind::indicator;
        p.lo = args[0];
        p.hi = args[1];
        p.height = args[2];
    } else if (name == "scaled_u_star") {
        want(1);
        p.kind = DensityProfile::Kind::scaled_u_star;
        p.factor = args[0];
    } else if (name == "gaussian") {
        want(3);
        p.kind = DensityProfile::Kind::gaussian;
        p.center = args[0];
        p.width = args[1];
        p.mass = args[2];
    } else {
        throw ParseError(line, "unknown density profile '" + name + "'");
    }
    return p;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::map<std::string, bool> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
        if (seen[key]) throw ParseError(line_no, "duplicate key '" + key + "'");
        seen[key] = true;

        if (key == "lambda") cfg.params.lambda = parse_number(value, line_no);
        else if (key == "gamma") cfg.params.gamma = parse_number(value, line_no);
        else if (key == "tau") cfg.params.tau = parse_number(value, line_no);
        else if (key == "beta") cfg.params.beta = parse_number(value, line_no);
        else if (key == "mu") cfg.params.mu = parse_number(value, line_no);
        else if (key == "x0") cfg.params.x0 = parse_number(value, line_no);
        else if (key == "regime") {
            if (value == "auto") cfg.regime = RegimeChoice::automatic;
            else if (value == "disease_free") cfg.regime = RegimeChoice::disease_free;
            else if (value == "disease") cfg.regime = RegimeChoice::disease;
            else throw ParseError(line_no, "regime must be auto|disease_free|disease");
        } else if (key == "initial_U") cfg.initial_U = parse_number(value, line_no);
        else if (key == "initial_V") cfg.initial_V = parse_number(value, line_no);
        else if (key == "initial_P") cfg.initial_P = parse_number(value, line_no);
        else if (key == "density") cfg.density = parse_profile(value, line_no);
        else if (key == "x_max") cfg.x_max = parse_number(value, line_no);
        else if (key == "n") cfg.n = parse_int(value, line_no);
        else if (key == "t_end") cfg.t_end = parse_number(value, line_no);
        else if (key == "dt") cfg.dt = parse_number(value, line_no);
        else if (key == "snapshot_every") cfg.snapshot_every = parse_int(value, line_no);
        else if (key == "solver") {
            if (value == "ode") cfg.solver = SolverChoice::ode;
            else if (value == "pide") cfg.solver = SolverChoice::pide;
            else if (value == "characteristics") cfg.solver = SolverChoice::characteristics;
            else if (value == "all") cfg.solver = SolverChoice::all;
            else throw ParseError(line_no, "solver must be ode|pide|characteristics|all");
        } else if (key == "out") cfg.out_dir = value;
        else throw ParseError(line_no, "unknown key '" + key + "'");
    }

    // missing constants are reported together
    std::string missing;
    auto need = [&](bool present, const char* name) {
        if (!present) missing += missing.empty() ? name : std::string(", ") + name;
    };
    need(seen["lambda"], "lambda");
    need(seen["gamma"], "gamma");
    need(seen["tau"], "tau");
    need(seen["beta"], "beta");
    need(seen["mu"], "mu");
    need(seen["x0"], "x0");
    if (!missing.empty()) throw ValidationError("missing required constants: " + missing);

    validate(cfg.params);
    if (cfg.n < 2) throw ValidationError("n must be at least 2");
    if (!(cfg.t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (cfg.dt < 0.0) throw ValidationError("dt must be nonnegative");
    if (cfg.snapshot_every < 0) throw ValidationError("snapshot_every must be nonnegative");
    if (cfg.x_max > 0.0 && cfg.x_max <= cfg.params.x0)
        throw ValidationError("x_max must exceed x0");
    if (cfg.initial_U < 0.0) throw ValidationError("initial_U must be nonnegative");
    if (cfg.initial_P < 0.0) throw ValidationError("initial_P must be nonnegative");
    if (cfg.initial_U > 0.0 && cfg.initial_P < cfg.params.x0 * cfg.initial_U)
        throw ValidationError("initial_P must be at least x0 * initial_U");
    if (cfg.density.kind == DensityProfile::Kind::scaled_u_star &&
        !(cfg.params.threshold_ratio() > 1.0))
        throw ValidationError("scaled_u_star requires supercritical parameters");
    if (cfg.density.kind == DensityProfile::Kind::indicator &&
        !(cfg.density.hi > cfg.density.lo))
        throw ValidationError("indicator profile needs hi > lo");
    if (cfg.density.kind == DensityProfile::Kind::gaussian && !(cfg.density.width > 0.0))
        throw ValidationError("gaussian profile needs width > 0");
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    auto kv = [&](const char* k, const std::string& v) { out << k << " = " << v << "\n"; };
    auto kd = [&](const char* k, double v) { kv(k, format_double(v)); };
    kd("lambda", cfg.params.lambda);
    kd("gamma", cfg.params.gamma);
    kd("tau", cfg.params.tau);
    kd("beta", cfg.params.beta);
    kd("mu", cfg.params.mu);
    kd("x0", cfg.params.x0);
    kv("regime", cfg.regime == RegimeChoice::automatic      ? "auto"
                 : cfg.regime == RegimeChoice::disease_free ? "disease_free"
                                                            : "disease");
    kd("initial_U", cfg.initial_U);
    kd("initial_V", cfg.initial_V);
    kd("initial_P", cfg.initial_P);
    {
        std::ostringstream d;
        switch (cfg.density.kind) {
        case DensityProfile::Kind::zero: d << "zero"; break;
        case DensityProfile::Kind::indicator:
            d << "indicator(" << format_double(cfg.density.lo) << ", "
              << format_double(cfg.density.hi) << ", " << format_double(cfg.density.height)
              << ")";
            break;
        case DensityProfile::Kind::scaled_u_star:
            d << "scaled_u_star(" << format_double(cfg.density.factor) << ")";
            break;
        case DensityProfile::Kind::gaussian:
            d << "gaussian(" << format_double(cfg.density.center) << ", "
              << format_double(cfg.density.width) << ", " << format_double(cfg.density.mass)
              << ")";
            break;
        }
        kv("density", d.str());
    }
    kd("x_max", cfg.x_max);
    kv("n", std::to_string(cfg.n));
    kd("t_end", cfg.t_end);
    kd("dt", cfg.dt);
    kv("snapshot_every", std::to_string(cfg.snapshot_every));
    kv("solver", cfg.solver == SolverChoice::ode               ? "ode"
                 : cfg.solver == SolverChoice::pide            ? "pide"
                 : cfg.solver == SolverChoice::characteristics ? "characteristics"
                                                               : "all");
    kv("out", cfg.out_dir);
    return out.str();
}

} // namespace prion
