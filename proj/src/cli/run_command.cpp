#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "hetstrip/cli/run_config.hpp"
#include "hetstrip/io/field_csv.hpp"
#include "hetstrip/io/reports.hpp"

namespace hetstrip::cli {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string solution_path;
    std::string out_dir;
    bool deterministic = false;
};

void apply_backend(const CommonArgs& a) {
    if (a.deterministic)
        kernels::set_default_backend(kernels::Backend::scalar);
    else
        kernels::set_default_backend(kernels::best_backend());
}

fs::path ensure_out_dir(const RunConfig& cfg, const CommonArgs& a) {
    const fs::path dir = a.out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(a.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_solve(const CommonArgs& a) {
    const RunConfig cfg = load_config(a.config_path);
    apply_backend(a);
    const fs::path dir = ensure_out_dir(cfg, a);

    const auto nf = cfg.make_nfunction();
    const auto A = cfg.make_coefficient();
    const auto V = cfg.make_potential();
    const auto grid = cfg.make_grid();
    const auto start = strip::initial_ramp(grid, cfg.alpha, cfg.beta);
    const auto rep = solver::minimize(start, nf, A, V, cfg.solver);

    if (cfg.fmt_csv) io::write_field_csv((dir / "solution.csv").string(), rep.field);
    if (cfg.fmt_json) io::write_text((dir / "report.json").string(), io::solve_report_json(rep).dump(2) + "\n");
    std::cout << (rep.converged ? "solve: converged (" : "solve: FAILED (")
              << solver::termination_name(rep.reason) << ") after " << rep.iterations
              << " iterations, energy " << rep.energy.total << "\n";
    return rep.converged ? 0 : 3;
}

int cmd_verify(const CommonArgs& a) {
    const RunConfig cfg = load_config(a.config_path);
    apply_backend(a);
    const fs::path dir = ensure_out_dir(cfg, a);
    if (a.solution_path.empty()) throw ConfigError("--solution", "verify requires a solution file");

    const auto field = io::read_field_csv(a.solution_path);
    const auto nf = cfg.make_nfunction();
    const auto A = cfg.make_coefficient();
    const auto V = cfg.make_potential();
    const auto rep = verify::check_field(field, nf, A, V, cfg.verify);

    if (cfg.fmt_json)
        io::write_text((dir / "verify.json").string(),
                       io::verify_report_json(rep, cfg.verify.check_odd).dump(2) + "\n");
    if (cfg.fmt_csv) io::write_text((dir / "verify.csv").string(), io::verify_report_csv(rep));
    const bool pass = rep.overall(cfg.verify.check_odd);
    std::cout << "verify: " << (pass ? "pass" : "FAIL") << " (max|grad|=" << rep.max_grad
              << ", endpoint errors " << rep.err_left << "/" << rep.err_right << ")\n";
    return pass ? 0 : 1;
}

int cmd_sweep_beta(const CommonArgs& a) {
    const RunConfig cfg = load_config(a.config_path);
    apply_backend(a);
    const fs::path dir = ensure_out_dir(cfg, a);
    if (cfg.sweep_betas.empty()) throw ConfigError("sweep.betas", "missing required value");

    const auto A = cfg.make_coefficient();
    const auto tab = verify::beta_sweep(cfg.sweep_betas, cfg.sweep_L, cfg.make_grid(), A,
                                        cfg.solver, cfg.verify);
    if (cfg.fmt_csv)
        io::write_text((dir / "sweep_beta.csv").string(), io::sweep_table_csv(tab, "beta"));
    if (cfg.fmt_json)
        io::write_text((dir / "sweep_beta.json").string(),
                       io::sweep_table_json(tab, "beta").dump(2) + "\n");
    std::cout << "sweep-beta: " << (tab.pass ? "pass" : "FAIL");
    if (tab.delta_hat)
        std::cout << ", delta_hat=" << *tab.delta_hat << "\n";
    else
        std::cout << ", delta_hat below smallest sampled beta\n";
    return tab.pass ? 0 : 1;
}

int cmd_sweep_eps(const CommonArgs& a) {
    const RunConfig cfg = load_config(a.config_path);
    apply_backend(a);
    const fs::path dir = ensure_out_dir(cfg, a);
    if (cfg.sweep_eps.empty()) throw ConfigError("sweep.epsilons", "missing required value");
    if (cfg.coeff_class != 3) throw ConfigError("coefficient.class", "sweep-eps requires class 3");

    const auto nf = cfg.make_nfunction();
    const auto A = cfg.make_coefficient();
    const auto V = cfg.make_potential();
    const auto tab =
        verify::epsilon_energy_comparison(cfg.sweep_eps, A, V, nf, cfg.make_grid(), cfg.solver);
    if (cfg.fmt_csv)
        io::write_text((dir / "sweep_eps.csv").string(), io::sweep_table_csv(tab, "eps"));
    if (cfg.fmt_json)
        io::write_text((dir / "sweep_eps.json").string(),
                       io::sweep_table_json(tab, "eps").dump(2) + "\n");
    std::cout << "sweep-eps: " << (tab.pass ? "pass" : "FAIL")
              << " (reference energy " << tab.reference_energy << ")\n";
    return tab.pass ? 0 : 1;
}

int cmd_export_profile(const CommonArgs& a) {
    const RunConfig cfg = load_config(a.config_path);
    apply_backend(a);
    const fs::path dir = ensure_out_dir(cfg, a);
    if (a.solution_path.empty())
        throw ConfigError("--solution", "export-profile requires a solution file");

    const auto field = io::read_field_csv(a.solution_path);
    const int j0 = field.grid.ny / 2;
    char buf[64];
    std::string s;
    std::snprintf(buf, sizeof(buf), "# y0=%.17g\n", field.grid.y(j0));
    s += buf;
    s += "x,u\n";
    for (int i = 0; i < field.grid.nx; ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", field.grid.x(i), field.at(i, j0));
        s += buf;
    }
    io::write_text((dir / "profile.csv").string(), s);
    std::cout << "export-profile: wrote " << (dir / "profile.csv").string() << "\n";
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"heteroclinic transition-layer solver on the strip R x (0,1)"};
    app.require_subcommand(1);

    CommonArgs common;
    const auto add_common = [&](CLI::App* sub, bool with_solution) {
        sub->add_option("--config", common.config_path, "JSON run configuration")->required();
        if (with_solution) sub->add_option("--solution", common.solution_path, "field CSV path");
        sub->add_option("--out", common.out_dir, "output directory (overrides config)");
        sub->add_flag("--deterministic", common.deterministic,
                      "ordered scalar reductions for bitwise-reproducible output");
    };

    auto* solve = app.add_subcommand("solve", "minimize the strip energy and write the field");
    add_common(solve, false);
    auto* verify_cmd = app.add_subcommand("verify", "check a stored solution");
    add_common(verify_cmd, true);
    auto* sweep_beta = app.add_subcommand("sweep-beta", "shrinking-wells sweep");
    add_common(sweep_beta, false);
    auto* sweep_eps = app.add_subcommand("sweep-eps", "eps-scaled energy comparison");
    add_common(sweep_eps, false);
    auto* export_profile = app.add_subcommand("export-profile", "write the mid-row x-profile");
    add_common(export_profile, true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage problems count as configuration errors
    }

    try {
        if (solve->parsed()) return cmd_solve(common);
        if (verify_cmd->parsed()) return cmd_verify(common);
        if (sweep_beta->parsed()) return cmd_sweep_beta(common);
        if (sweep_eps->parsed()) return cmd_sweep_eps(common);
        if (export_profile->parsed()) return cmd_export_profile(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace hetstrip::cli
