#pragma once

// Discrete action on the window: midpoint quadrature of
//     Phi(|grad u|) + A(eps x, y) V(u)
// over cells, with forward differences sharing a corner (periodic wrap in y,
// clamped ghost columns in x).  The ghost column on each side contributes one
// extra column of gradient links; everything beyond is constant at a well, so
// the outside-window contribution is exactly zero.

#include <map>
#include <vector>

#include "hetstrip/coefficients/coefficient.hpp"
#include "hetstrip/kernels/kernels.hpp"
#include "hetstrip/orlicz/nfunction.hpp"
#include "hetstrip/potentials/potential.hpp"
#include "hetstrip/strip/field.hpp"

namespace hetstrip::strip {

struct EnergyBreakdown {
    double total = 0.0;
    double gradient_part = 0.0;
    double potential_part = 0.0;
    // beyond the clamped columns the field sits at a well, so both density
    // terms vanish; kept as an explicit entry of the accounting
    double outside_window = 0.0;
    std::map<int, double> per_cell;  // j -> a_j over the unit cells Omega_j
};

enum class ResidualOp { truncated, true_curvature };

// Binds grid, operator, coefficient samples and potential for repeated
// evaluation; the coefficient is sampled once at the cell centers.
class EnergyModel {
public:
    EnergyModel(const Grid& g, const orlicz::NFunction& nf, const coeff::CoefficientField& A,
                const pot::Potential& V,
                kernels::Backend be = kernels::default_backend());

    double energy(const Field& f) const;
    EnergyBreakdown breakdown(const Field& f) const;

    // line-search path: same sum on a bare value buffer of the grid's shape,
    // returning whatever it evaluates to (no finiteness check)
    double energy_raw(const std::vector<double>& values) const;

    // exact partial derivatives of the discrete energy (cell measure included)
    void gradient(const Field& f, std::vector<double>& out) const;

    // max over all difference stencils (ghost links included) of |grad u|
    double max_gradient(const Field& f) const;

    // pointwise operator residual at cell centers: the discrete
    // -div(phi(|grad u|) grad u) + A V'(u) with the chosen slope density
    void residual(const Field& f, ResidualOp op, std::vector<double>& out) const;

    const Grid& grid() const { return grid_; }
    const pot::Potential& potential() const { return pot_; }
    const orlicz::NFunction& nfunction() const { return nf_; }
    kernels::Backend backend() const { return be_; }

private:
    Grid grid_;
    orlicz::NFunction nf_;
    pot::Potential pot_;
    kernels::NfKernel nfk_;
    kernels::PotKernel potk_;
    std::vector<double> A_;  // sampled A(eps x_i, y_j)
    kernels::Backend be_;

    mutable std::vector<double> dx_, dy_, fx_, fy_, pg_, ghost_;

    template <class RowFn>
    void for_rows(const double* base, RowFn&& fn) const;
};

// One-shot convenience wrappers (each builds a model internally).
EnergyBreakdown energy(const Field& f, const orlicz::NFunction& nf,
                       const coeff::CoefficientField& A, const pot::Potential& V,
                       kernels::Backend be = kernels::default_backend());

Field energy_gradient(const Field& f, const orlicz::NFunction& nf,
                      const coeff::CoefficientField& A, const pot::Potential& V,
                      kernels::Backend be = kernels::default_backend());

struct ResidualReport {
    double max_norm = 0.0;
    Field field;
};
ResidualReport weak_residual(const Field& f, ResidualOp op, const orlicz::NFunction& nf,
                             const coeff::CoefficientField& A, const pot::Potential& V,
                             kernels::Backend be = kernels::default_backend());

}  // namespace hetstrip::strip
