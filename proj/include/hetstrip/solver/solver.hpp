#pragma once

// Minimization of the discrete strip action over the admissible box class:
// spectral projected gradient with a monotone backtracking line search, the
// never-increasing clamp to [alpha,beta] after every accepted step, optional
// y-mirror symmetrization, and the odd-in-x constraint mode.

#include <optional>
#include <string>
#include <vector>

#include "hetstrip/strip/energy.hpp"

namespace hetstrip::solver {

struct LineSearchConfig {
    double shrink = 0.5;     // backtracking factor, in (0,1)
    double decrease = 1e-4;  // sufficient-decrease constant
};

struct SolverConfig {
    long max_iter = 200000;
    double tol_grad = 1e-8;    // max-norm of the projected gradient
    double tol_energy = 0.0;   // relative energy decrease; 0 disables
    LineSearchConfig line_search;
    int symmetrize_every = 0;  // y-symmetrize period; 0 disables
    bool odd_constraint = false;
    bool projection = true;    // box projection to [alpha, beta]
};

enum class Termination { tol_grad, tol_energy, max_iter, line_search_failure };

std::string termination_name(Termination t);

struct SolveReport {
    strip::Field field;
    strip::EnergyBreakdown energy;
    long iterations = 0;
    double final_grad_norm = 0.0;
    Termination reason = Termination::max_iter;
    bool converged = false;
    std::vector<double> energy_trail;     // accepted energies, starts at the projected start
    std::vector<double> grad_norm_trail;  // projected-gradient max-norm per iteration
    int anchor_cell = 0;  // first unit cell where the Phi(|u-alpha|) mass exceeds delta
};

SolveReport minimize(const strip::Field& start, const orlicz::NFunction& nf,
                     const coeff::CoefficientField& A, const pot::Potential& V,
                     const SolverConfig& cfg,
                     kernels::Backend be = kernels::default_backend());

// y-mirror symmetrization: compares the energy of the two horizontal halves and
// reflects the cheaper one across y = 1/2 (ties keep the lower half).  Under
// the y-even / 1-periodic coefficient conditions this never increases the
// energy; the output satisfies v(x,y) = v(x,1-y) exactly (bitwise).
strip::Field y_symmetrize(const strip::Field& f, const orlicz::NFunction& nf,
                          const coeff::CoefficientField& A, const pot::Potential& V,
                          kernels::Backend be = kernels::default_backend());

// Projection onto the odd class: odd part in x, then on x >= 0 the reflected
// absolute value capped at beta (the reflection, not a zero-clamp, so an even
// potential keeps its value and the energy cannot increase), odd-extended to
// x < 0.  Output is bitwise odd.  Requires a symmetric window with
// clamp_left == -clamp_right.
strip::Field odd_project(const strip::Field& f);

struct ContinuationStage {
    enum class Vary { L, T, beta };
    Vary vary;
    double value;
    int nx = 0;  // optional new nx for T stages (0 keeps hx)
};

// Warm-started chain of solves varying one parameter monotonically; beta
// stages rescale the previous field, T stages resample it in x.  A stage that
// fails to converge aborts with its index in the error message.
std::vector<SolveReport> continuation_solve(const std::vector<ContinuationStage>& schedule,
                                            const strip::Grid& g0, const orlicz::NFunction& nf0,
                                            const coeff::CoefficientField& A,
                                            const pot::Potential& V0, const SolverConfig& cfg,
                                            kernels::Backend be = kernels::default_backend());

}  // namespace hetstrip::solver
