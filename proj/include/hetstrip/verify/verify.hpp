#pragma once

// Post-solve property checks and parameter sweeps: the sqrt(L) gradient
// bound, heteroclinic endpoint errors, strict well bounds, symmetry
// residuals, operator-agreement below the truncation threshold, the
// shrinking-wells sweep and the eps-scaled energy comparison, plus an
// independent 1-D collocation oracle for y-independent data.

#include <optional>
#include <string>
#include <vector>

#include "hetstrip/solver/solver.hpp"

namespace hetstrip::verify {

struct VerifyOptions {
    double tol = 1e-3;             // heteroclinic endpoint tolerance
    double tprime_fraction = 0.9;  // endpoint checks at x = +-(fraction*T)
    bool check_odd = false;        // include the odd-class properties
};

struct VerifyReport {
    // ||grad u|| vs sqrt(L)
    double max_grad = 0.0;
    double sqrt_L = 0.0;
    bool gradient_bound_pass = false;
    double gradient_margin = 0.0;

    // endpoint errors at x = -T' and +T'
    double tprime = 0.0;
    double err_left = 0.0;   // sup_y |u(-T',y) - alpha|
    double err_right = 0.0;  // sup_y |u(+T',y) - beta|
    double endpoint_tol = 0.0;
    bool heteroclinic_pass = false;

    // strict bounds on the stored (non-ghost) cells
    double min_above_alpha = 0.0;  // min (u - alpha)
    double min_below_beta = 0.0;   // min (beta - u)
    bool strict_bounds_pass = false;

    // symmetry residuals
    double y_symmetry_residual = 0.0;  // max |u(x,y) - u(x,1-y)|
    double odd_residual = 0.0;         // max |u(x,y) + u(-x,y)|

    // operator residuals
    double residual_truncated = 0.0;
    double residual_true_curvature = 0.0;
    double residual_agreement = 0.0;  // max pointwise difference
    bool residuals_consistent = false;

    // odd-class properties (filled when requested)
    double center_value = 0.0;      // interpolated |u(0,y)| maximum
    double min_positive_x = 0.0;    // min u over cells with x > 0
    double max_on_positive_x = 0.0; // max u over cells with x > 0
    bool odd_pass = false;

    bool overall(bool with_odd) const;
};

VerifyReport check_field(const strip::Field& f, const orlicz::NFunction& nf,
                         const coeff::CoefficientField& A, const pot::Potential& V,
                         const VerifyOptions& opts,
                         kernels::Backend be = kernels::default_backend());

VerifyReport check_solution(const solver::SolveReport& rep, const orlicz::NFunction& nf,
                            const coeff::CoefficientField& A, const pot::Potential& V,
                            const VerifyOptions& opts,
                            kernels::Backend be = kernels::default_backend());

struct SweepRow {
    double param = 0.0;
    double energy = 0.0;
    double max_grad = 0.0;
    double err_left = 0.0;
    double err_right = 0.0;
    bool converged = false;
    bool pass = false;  // beta sweep: strict sqrt(L) bound; eps sweep: E_eps < E_inf
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::optional<double> delta_hat;  // beta sweep: largest passing beta
    double reference_energy = 0.0;    // eps sweep: the constant-A_inf minimum
    bool monotone = false;            // beta sweep: max_grad non-increasing
    bool pass = false;
};

// One solve per beta (GL wells at -beta/+beta, cold ramp starts), recording
// the measured gradient maxima; delta_hat is the largest sampled beta whose
// converged solve satisfies the strict bound, or empty when none does.
SweepTable beta_sweep(const std::vector<double>& betas, double L, const strip::Grid& domain,
                      const coeff::CoefficientField& A, const solver::SolverConfig& cfg,
                      const VerifyOptions& opts,
                      kernels::Backend be = kernels::default_backend());

// Minimizes I_eps per eps (A must be class 3) and I_inf once with the
// constant coefficient A_inf; passes iff the smallest eps beats I_inf.
SweepTable epsilon_energy_comparison(const std::vector<double>& epsilons,
                                     const coeff::CoefficientField& A, const pot::Potential& V,
                                     const orlicz::NFunction& nf, const strip::Grid& domain,
                                     const solver::SolverConfig& cfg,
                                     kernels::Backend be = kernels::default_backend());

struct Oracle1DResult {
    bool oracle_converged = false;
    double oracle_residual = 0.0;
    double mismatch = 0.0;           // max |u(x_i, y_j) - q(x_i)|
    std::vector<double> profile;     // q at the cell centers
};

// Damped-Newton collocation for the reduced two-point problem
//   -(phi(|q'|) q')' + A(x) V'(q) = 0,  q(-T) = clamp_left, q(T) = clamp_right
// on the same x-grid; requires A independent of y.
Oracle1DResult oracle_1d_compare(const strip::Field& f, const orlicz::NFunction& nf,
                                 const coeff::CoefficientField& A, const pot::Potential& V);

}  // namespace hetstrip::verify
