#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prion/config.hpp"
#include "prion/equilibria.hpp"
#include "prion/errors.hpp"
#include "prion/grid.hpp"
#include "prion/io.hpp"
#include "prion/ode.hpp"
#include "prion/scenario.hpp"
#include "prion/spectral.hpp"
#include "prion/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

int cmd_equilibria(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = prion::load_config(config_path);
    const auto& p = cfg.params;
    const auto cls = prion::threshold_classify(p);
    const auto d = prion::derive_constants(p, cfg.resolved_regime());

    std::cout << "threshold ratio R = " << prion::format_double(d.R) << "  ("
              << (cls == prion::Threshold::subcritical     ? "subcritical"
                  : cls == prion::Threshold::critical      ? "critical"
                                                           : "supercritical")
              << ")\n";
    std::cout << "mu0 = " << prion::format_double(d.mu0)
              << ", omega_inf = " << prion::format_double(d.omega_inf)
              << ", a = " << prion::format_double(d.a) << "\n";

    const prion::Grid g(p.x0, cfg.resolved_x_max(), cfg.n);
    const auto df = prion::disease_free_equilibrium(p, g);
    std::cout << "disease-free equilibrium: V = " << prion::format_double(df.V)
              << ", u = 0\n";

    if (cls == prion::Threshold::supercritical) {
        const auto eq = prion::disease_equilibrium_ode(p);
        std::cout << "disease equilibrium: U* = " << prion::format_double(eq.U)
                  << ", V* = " << prion::format_double(eq.V)
                  << ", P* = " << prion::format_double(eq.P) << "\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            const auto us = prion::stationary_density(p, g);
            const auto path = std::filesystem::path(out_dir) / "stationary_density.csv";
            prion::write_density_csv(path, us);
            std::cout << "stationary density written to " << path.string() << "\n";
        }
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::string& solver) {
    auto cfg = prion::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!solver.empty()) {
        if (solver == "ode") cfg.solver = prion::SolverChoice::ode;
        else if (solver == "pide") cfg.solver = prion::SolverChoice::pide;
        else if (solver == "characteristics") cfg.solver = prion::SolverChoice::characteristics;
        else if (solver == "all") cfg.solver = prion::SolverChoice::all;
        else throw prion::ValidationError("unknown solver '" + solver + "'");
    }
    const auto result = prion::run_scenario(cfg);
    std::cout << "manifest: " << result.manifest_path.string() << "\n";
    return kExitOk;
}

int cmd_spectral(const std::string& config_path, const std::string& out_dir) {
    const auto cfg = prion::load_config(config_path);
    const auto& p = cfg.params;
    const auto regime = cfg.resolved_regime();
    const auto d = prion::derive_constants(p, regime);

    const prion::Grid g(0.0, cfg.resolved_x_max() - p.x0, cfg.n);
    const prion::OperatorContext ctx = prion::OperatorContext::for_params(p, regime, g);

    std::cout << "operator context: omega = " << prion::format_double(ctx.omega)
              << ", mu0 = " << prion::format_double(ctx.mu0)
              << ", beta = " << prion::format_double(ctx.beta)
              << ", a = " << prion::format_double(ctx.a)
              << (ctx.disease_case() ? "  [disease case]" : "  [disease-free case]") << "\n";

    const auto [lp, lm] = prion::moment_matrix_eigenvalues(p, d.omega_inf);
    std::cout << "moment matrix eigenvalues: " << prion::format_double(lp) << ", "
              << prion::format_double(lm) << "\n";

    if (ctx.disease_case()) {
        const auto k = prion::kernel_e(ctx);
        const auto de = prion::kernel_e_derivative(ctx);
        const auto Le = prion::apply_L(ctx, k.e, de);
        std::cout << "kernel element: |int (a+x) e - 1| = "
                  << prion::format_double(std::abs(k.normalization - 1.0))
                  << ", |L e| = " << prion::format_double(prion::weighted_norm(Le, ctx.a))
                  << "\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            const auto path = std::filesystem::path(out_dir) / "kernel_element.csv";
            prion::write_density_csv(path, k.e);
            std::cout << "kernel element written to " << path.string() << "\n";
        }
    } else {
        std::cout << "decay rate bound: mu0 - sqrt(lambda beta tau / gamma) = "
                  << prion::format_double(
                         ctx.mu0 - std::sqrt(p.lambda * p.beta * p.tau / p.gamma))
                  << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& level, const std::string& out_dir) {
    prion::VerifyLevel lvl;
    if (level == "quick") lvl = prion::VerifyLevel::quick;
    else if (level == "full") lvl = prion::VerifyLevel::full;
    else throw prion::ValidationError("level must be quick or full");

    const auto report = prion::verify_suite(lvl);
    std::cout << prion::report_lines(report);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / "verification_report.json";
        std::ofstream f(path);
        f << prion::report_json(report);
        std::cout << "report: " << path.string() << "\n";
    }
    return report.overall_pass ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"priondyn: polymerization-fragmentation dynamics solvers"};
    app.require_subcommand(1);

    std::string config_path, out_dir, solver, level = "quick";

    auto* eq = app.add_subcommand("equilibria", "closed-form equilibria and threshold");
    eq->add_option("--config", config_path, "config file")->required();
    eq->add_option("--out", out_dir, "output directory");

    auto* sim = app.add_subcommand("simulate", "run the configured scenario");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides config)");
    sim->add_option("--solver", solver, "ode|pide|characteristics|all (overrides config)");

    auto* spec = app.add_subcommand("spectral", "operator context, kernel element, eigenvalues");
    spec->add_option("--config", config_path, "config file")->required();
    spec->add_option("--out", out_dir, "output directory");

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_option("--level", level, "quick|full (default quick)");
    ver->add_option("--out", out_dir, "output directory for the JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eq->parsed()) return cmd_equilibria(config_path, out_dir);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, solver);
        if (spec->parsed()) return cmd_spectral(config_path, out_dir);
        if (ver->parsed()) return cmd_verify(level, out_dir);
    } catch (const prion::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const prion::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const prion::Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
