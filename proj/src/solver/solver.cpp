#include "hetstrip/solver/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hetstrip::solver {

using kernels::Backend;
using strip::EnergyModel;
using strip::Field;

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::tol_grad:
            return "tol-grad";
        case Termination::tol_energy:
            return "tol-energy";
        case Termination::max_iter:
            return "max-iter";
        case Termination::line_search_failure:
            return "line-search-failure";
    }
    return "?";
}

namespace {

int anchor_cell(const Field& f, const orlicz::NFunction& nf, double alpha, double beta) {
    const strip::Grid& g = f.grid;
    const double cell = g.hx() * g.hy();
    const double delta = 0.5 * nf.Phi(0.5 * (beta - alpha));
    const int jmin = static_cast<int>(std::floor(-g.T));
    const int jmax = static_cast<int>(std::ceil(g.T)) - 1;
    std::vector<double> mass(static_cast<size_t>(jmax - jmin + 1), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int b = static_cast<int>(std::floor(g.x(i)));
            b = std::min(jmax, std::max(jmin, b));
            mass[b - jmin] += cell * nf.Phi(std::fabs(f.at(i, j) - alpha));
        }
    for (int b = 0; b < static_cast<int>(mass.size()); ++b)
        if (mass[b] > delta) return b + jmin;
    return jmax;
}

// Orthogonal projection of a gradient onto the odd subspace (bitwise odd
// output).  The corner-sharing stencil is not exactly mirror-equivariant, so
// the raw gradient of an odd iterate carries a small even component; dropping
// it keeps the iterates bitwise odd, which is the constrained-class descent.
void odd_symmetrize_gradient(std::vector<double>& g, int nx, int ny) {
    for (int j = 0; j < ny; ++j) {
        double* row = g.data() + static_cast<size_t>(j) * nx;
        for (int k = nx / 2; k < nx; ++k) {
            const double o = 0.5 * (row[k] - row[nx - 1 - k]);
            row[k] = o;
            row[nx - 1 - k] = -o;
        }
    }
}

void odd_project_inplace(Field& f) {
    const strip::Grid& g = f.grid;
    if (g.clamp_left != -g.clamp_right)
        throw std::invalid_argument("odd_project: window clamps must be symmetric (alpha = -beta)");
    const double beta = g.clamp_right;
    const int nx = g.nx;
    for (int j = 0; j < g.ny; ++j) {
        double* row = f.row(j);
        for (int k = nx / 2; k < nx; ++k) {
            const double o = 0.5 * (row[k] - row[nx - 1 - k]);
            const double val = std::min(std::fabs(o), beta);
            row[k] = val;
            row[nx - 1 - k] = -val;
        }
    }
}

}  // namespace

strip::Field odd_project(const strip::Field& f) {
    Field out = f;
    odd_project_inplace(out);
    return out;
}

strip::Field y_symmetrize(const strip::Field& f, const orlicz::NFunction& nf,
                          const coeff::CoefficientField& A, const pot::Potential& V, Backend be) {
    const strip::Grid& g = f.grid;
    if (g.ny % 2 != 0) throw std::invalid_argument("y_symmetrize: ny must be even");
    EnergyModel model(g, nf, A, V, be);
    // Build both mirror candidates and keep the cheaper; their energies are
    // twice the respective half energies up to rounding, so this realizes the
    // cheaper-half reflection with the same tie rule (lower half wins ties).
    Field lower(g), upper(g);
    for (int j = 0; j < g.ny; ++j) {
        const int mj = g.ny - 1 - j;
        const double* src_lo = (j < g.ny / 2) ? f.row(j) : f.row(mj);
        const double* src_hi = (j >= g.ny / 2) ? f.row(j) : f.row(mj);
        std::memcpy(lower.row(j), src_lo, sizeof(double) * g.nx);
        std::memcpy(upper.row(j), src_hi, sizeof(double) * g.nx);
    }
    const double e_lo = model.energy(lower);
    const double e_hi = model.energy(upper);
    return (e_lo <= e_hi) ? lower : upper;
}

SolveReport minimize(const strip::Field& start, const orlicz::NFunction& nf,
                     const coeff::CoefficientField& A, const pot::Potential& V,
                     const SolverConfig& cfg, Backend be) {
    if (!(cfg.tol_grad > 0.0)) throw std::invalid_argument("minimize: tol_grad must be > 0");
    if (!(cfg.line_search.shrink > 0.0 && cfg.line_search.shrink < 1.0))
        throw std::invalid_argument("minimize: line-search shrink must lie in (0,1)");
    if (!(cfg.line_search.decrease > 0.0 && cfg.line_search.decrease < 1.0))
        throw std::invalid_argument("minimize: sufficient-decrease constant must lie in (0,1)");
    if (!start.finite()) throw std::invalid_argument("minimize: start field is not finite");

    EnergyModel model(start.grid, nf, A, V, be);
    const double lo = V.alpha, hi = V.beta;
    const size_t n = start.size();
    const bool box = cfg.projection;
    const auto slack = [](double e) { return 1e-12 * (1.0 + std::fabs(e)); };

    Field u = start;
    if (box)
        for (double& x : u.v) x = std::min(hi, std::max(lo, x));
    if (cfg.odd_constraint) odd_project_inplace(u);

    SolveReport rep;
    std::vector<double> g(n), gnew(n), d(n), trial(n), s(n), y(n);

    double E = model.energy(u);
    model.gradient(u, g);
    if (cfg.odd_constraint) odd_symmetrize_gradient(g, start.grid.nx, start.grid.ny);
    double pg = kernels::pg_max(u.v.data(), g.data(), lo, hi, box, n, be);
    rep.energy_trail.push_back(E);
    rep.grad_norm_trail.push_back(pg);

    double lambda = (pg > 0.0) ? std::min(1e4, 1.0 / pg) : 1.0;
    const double lam_min = 1e-12, lam_max = 1e12;

    Termination reason = Termination::max_iter;
    long it = 0;
    if (pg < cfg.tol_grad) {
        reason = Termination::tol_grad;  // already stationary: zero iterations
    } else {
        for (it = 1; it <= cfg.max_iter; ++it) {
            // projected trial point and feasible direction
            double gd = 0.0;
            for (int shrinks = 0;; ++shrinks) {
                kernels::vstep_clamped(u.v.data(), g.data(), -lambda, lo, hi, box, d.data(), n, be);
                for (size_t i = 0; i < n; ++i) d[i] -= u.v[i];
                gd = kernels::vdot(g.data(), d.data(), n, be);
                if (gd < 0.0) break;
                lambda *= 0.1;
                if (shrinks > 60) break;
            }
            if (gd >= 0.0) {
                reason = Termination::line_search_failure;
                break;
            }

            // monotone backtracking on t in (0,1]
            double t = 1.0, Et = 0.0;
            bool accepted = false;
            while (t >= 1e-16) {
                kernels::vstep_clamped(u.v.data(), d.data(), t, lo, hi, box, trial.data(), n, be);
                Et = model.energy_raw(trial);
                if (std::isfinite(Et) && Et <= E + cfg.line_search.decrease * t * gd) {
                    accepted = true;
                    break;
                }
                t *= cfg.line_search.shrink;
            }
            if (!accepted) {
                reason = Termination::line_search_failure;
                break;
            }

            for (size_t i = 0; i < n; ++i) s[i] = trial[i] - u.v[i];
            std::memcpy(u.v.data(), trial.data(), n * sizeof(double));
            const double E_prev = E;
            E = Et;

            // constraint projections; neither may increase the energy
            if (cfg.odd_constraint) {
                Field proj = u;
                odd_project_inplace(proj);
                if (std::memcmp(proj.v.data(), u.v.data(), n * sizeof(double)) != 0) {
                    const double Ep = model.energy(proj);
                    if (Ep > E + slack(E))
                        throw std::logic_error("minimize: odd projection increased the energy");
                    for (size_t i = 0; i < n; ++i) s[i] += proj.v[i] - u.v[i];
                    u = std::move(proj);
                    E = Ep;
                }
            }
            if (cfg.symmetrize_every > 0 && it % cfg.symmetrize_every == 0) {
                Field sym = y_symmetrize(u, nf, A, V, be);
                if (std::memcmp(sym.v.data(), u.v.data(), n * sizeof(double)) != 0) {
                    const double Es = model.energy(sym);
                    if (Es > E + slack(E))
                        throw std::logic_error("minimize: y-symmetrization increased the energy");
                    for (size_t i = 0; i < n; ++i) s[i] += sym.v[i] - u.v[i];
                    u = std::move(sym);
                    E = Es;
                }
            }

            model.gradient(u, gnew);
            if (cfg.odd_constraint) odd_symmetrize_gradient(gnew, start.grid.nx, start.grid.ny);
            for (size_t i = 0; i < n; ++i) y[i] = gnew[i] - g[i];
            const double sy = kernels::vdot(s.data(), y.data(), n, be);
            const double ss = kernels::vdot(s.data(), s.data(), n, be);
            lambda = (sy > 0.0) ? std::min(lam_max, std::max(lam_min, ss / sy)) : lam_max;
            std::swap(g, gnew);

            pg = kernels::pg_max(u.v.data(), g.data(), lo, hi, box, n, be);
            rep.energy_trail.push_back(E);
            rep.grad_norm_trail.push_back(pg);

            if (pg < cfg.tol_grad) {
                reason = Termination::tol_grad;
                break;
            }
            if (cfg.tol_energy > 0.0 && (E_prev - E) <= cfg.tol_energy * (1.0 + std::fabs(E))) {
                reason = Termination::tol_energy;
                break;
            }
        }
        if (it > cfg.max_iter) {
            it = cfg.max_iter;
            reason = Termination::max_iter;
        }
    }

    rep.field = std::move(u);
    rep.energy = model.breakdown(rep.field);
    rep.iterations = it;
    rep.final_grad_norm = pg;
    rep.reason = reason;
    rep.converged = (reason == Termination::tol_grad || reason == Termination::tol_energy);
    rep.anchor_cell = anchor_cell(rep.field, nf, V.alpha, V.beta);
    return rep;
}

std::vector<SolveReport> continuation_solve(const std::vector<ContinuationStage>& schedule,
                                            const strip::Grid& g0, const orlicz::NFunction& nf0,
                                            const coeff::CoefficientField& A,
                                            const pot::Potential& V0, const SolverConfig& cfg,
                                            Backend be) {
    using Vary = ContinuationStage::Vary;
    if (schedule.empty()) throw std::invalid_argument("continuation_solve: empty schedule");
    for (size_t i = 1; i < schedule.size(); ++i) {
        if (schedule[i].vary != schedule[0].vary)
            throw std::invalid_argument("continuation_solve: stages must vary one parameter");
        const bool inc = schedule[1].value > schedule[0].value;
        if ((schedule[i].value > schedule[i - 1].value) != inc)
            throw std::invalid_argument("continuation_solve: stage values must be monotone");
    }

    std::vector<SolveReport> reports;
    strip::Grid g = g0;
    orlicz::NFunction nf = nf0;
    pot::Potential V = V0;
    Field warm;
    bool have_warm = false;

    for (size_t si = 0; si < schedule.size(); ++si) {
        const auto& st = schedule[si];
        switch (st.vary) {
            case Vary::L:
                nf = orlicz::build_truncated(st.value);
                break;
            case Vary::beta: {
                const double scale = st.value / V.beta;
                V = pot::build_potential(V.family, -st.value, st.value, V.coupled);
                g.clamp_left = -st.value;
                g.clamp_right = st.value;
                if (have_warm) {
                    for (double& x : warm.v) x *= scale;
                    warm.grid = g;
                }
                break;
            }
            case Vary::T: {
                strip::Grid ng = g;
                ng.T = st.value;
                ng.nx = st.nx > 0 ? st.nx : static_cast<int>(std::lround(g.nx * st.value / g.T));
                if (ng.nx % 2) ++ng.nx;
                if (have_warm) warm = strip::resample_x(warm, ng);
                g = ng;
                break;
            }
        }
        Field start = have_warm ? warm : strip::initial_ramp(g, V.alpha, V.beta);
        SolveReport r = minimize(start, nf, A, V, cfg, be);
        if (!r.converged)
            throw std::runtime_error("continuation_solve: stage " + std::to_string(si) +
                                     " failed (" + termination_name(r.reason) + ")");
        warm = r.field;
        have_warm = true;
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace hetstrip::solver
