#pragma once

// Run configuration: one JSON document, schema-validated before any
// computation; all cross-field preconditions re-checked here so every
// subcommand fails fast with the offending field path.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetstrip/coefficients/coefficient.hpp"
#include "hetstrip/orlicz/nfunction.hpp"
#include "hetstrip/potentials/potential.hpp"
#include "hetstrip/solver/solver.hpp"
#include "hetstrip/strip/field.hpp"
#include "hetstrip/verify/verify.hpp"

namespace hetstrip::cli {

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& what_)
        : std::runtime_error(field_ + ": " + what_), field(std::move(field_)) {}
};

struct RunConfig {
    // domain
    double T = 20.0;
    int nx = 400;
    int ny = 16;

    // operator
    std::string operator_kind = "truncated-mean-curvature";  // or "power-p"
    double L = 1.0;
    double p = 2.0;

    // potential
    std::string pot_family = "ginzburg-landau";  // sine-gordon | phi-coupled
    double alpha = -0.1;
    double beta = 0.1;

    // coefficient
    int coeff_class = 1;
    std::string coeff_name = "constant";
    std::map<std::string, double> coeff_params;
    double eps = 1.0;

    solver::SolverConfig solver;
    verify::VerifyOptions verify;

    // sweeps
    std::vector<double> sweep_betas;
    double sweep_L = 1.0;
    std::vector<double> sweep_eps;

    // output
    std::string out_dir = "out";
    bool fmt_csv = true;
    bool fmt_json = true;

    strip::Grid make_grid() const;
    orlicz::NFunction make_nfunction() const;
    pot::Potential make_potential() const;
    coeff::CoefficientField make_coefficient() const;
};

// Parses and validates; throws ConfigError naming the offending field path.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Subcommand dispatch: solve | verify | sweep-beta | sweep-eps |
// export-profile, with --config PATH, --solution PATH, --out DIR,
// --deterministic.  Returns the process exit status (0 pass, 1 verification
// failure, 2 config error, 3 solver failure).
int run_command(const std::vector<std::string>& args);

}  // namespace hetstrip::cli
