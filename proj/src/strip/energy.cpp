#include "hetstrip/strip/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace hetstrip::strip {

using kernels::Backend;

EnergyModel::EnergyModel(const Grid& g, const orlicz::NFunction& nf,
                         const coeff::CoefficientField& A, const pot::Potential& V, Backend be)
    : grid_(g),
      nf_(nf),
      pot_(V),
      A_(static_cast<size_t>(g.nx) * g.ny),
      be_(kernels::backend_available(be) ? be : Backend::scalar) {
    nfk_ = kernels::NfKernel::from(nf_);
    nfk_.generic = &nf_;  // rebind to the stored copy
    potk_ = kernels::PotKernel::from(pot_);
    potk_.generic = &pot_;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) A_[static_cast<size_t>(j) * g.nx + i] = A.eval(g.x(i), g.y(j));
    const size_t n = static_cast<size_t>(g.nx) * g.ny;
    dx_.resize(n);
    dy_.resize(n);
    fx_.resize(n);
    fy_.resize(n);
    pg_.resize(n);
    ghost_.resize(g.ny);
}

// Runs fn(j, u_row, dx_row, dy_row) over every row after filling the forward
// differences; ghost_[j] holds the left clamped-column link slope (its
// y-difference is zero since the ghost column is constant).
template <class RowFn>
void EnergyModel::for_rows(const double* base, RowFn&& fn) const {
    const int nx = grid_.nx, ny = grid_.ny;
    const double inv_hx = 1.0 / grid_.hx(), inv_hy = 1.0 / grid_.hy();
    for (int j = 0; j < ny; ++j) {
        const double* u = base + static_cast<size_t>(j) * nx;
        const double* up = base + static_cast<size_t>((j + 1) % ny) * nx;
        double* dx = dx_.data() + static_cast<size_t>(j) * nx;
        double* dy = dy_.data() + static_cast<size_t>(j) * nx;
        kernels::forward_diffs(u, up, grid_.clamp_right, inv_hx, inv_hy, dx, dy, nx, be_);
        ghost_[j] = (u[0] - grid_.clamp_left) * inv_hx;
        fn(j, u, dx, dy);
    }
}

double EnergyModel::energy_raw(const std::vector<double>& values) const {
    const int nx = grid_.nx;
    double gs = 0.0, ps = 0.0;
    for_rows(values.data(), [&](int j, const double* u, const double* dx, const double* dy) {
        gs += kernels::phi_sum(dx, dy, nx, nfk_, be_);
        gs += nfk_.Phi_of_g2(ghost_[j] * ghost_[j]);
        ps += kernels::pot_sum(u, A_.data() + static_cast<size_t>(j) * nx, nx, potk_, be_);
    });
    const double cell = grid_.hx() * grid_.hy();
    return gs * cell + ps * cell;
}

double EnergyModel::energy(const Field& f) const {
    if (!f.grid.same_shape(grid_)) throw std::invalid_argument("energy: field/grid mismatch");
    const double total = energy_raw(f.v);
    if (!std::isfinite(total)) throw std::domain_error("energy: non-finite (invalid field)");
    return total;
}

EnergyBreakdown EnergyModel::breakdown(const Field& f) const {
    if (!f.grid.same_shape(grid_)) throw std::invalid_argument("energy: field/grid mismatch");
    const int nx = grid_.nx;
    const double cell = grid_.hx() * grid_.hy();
    const int jmin = static_cast<int>(std::floor(-grid_.T));
    const int jmax = static_cast<int>(std::ceil(grid_.T)) - 1;
    const auto bin = [&](double x) {
        int b = static_cast<int>(std::floor(x));
        return std::min(jmax, std::max(jmin, b));
    };

    EnergyBreakdown out;
    double gs = 0.0, ps = 0.0;
    for_rows(f.v.data(), [&](int j, const double* u, const double* dx, const double* dy) {
        (void)j;
        const double* Arow = A_.data() + static_cast<size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const double g2 = dx[i] * dx[i] + dy[i] * dy[i];
            const double ge = nfk_.Phi_of_g2(g2);
            const double pe = Arow[i] * potk_.V(u[i]);
            gs += ge;
            ps += pe;
            out.per_cell[bin(grid_.x(i))] += (ge + pe) * cell;
        }
        const double gg = nfk_.Phi_of_g2(ghost_[j] * ghost_[j]);
        gs += gg;
        out.per_cell[bin(-grid_.T)] += gg * cell;
    });
    out.gradient_part = gs * cell;
    out.potential_part = ps * cell;
    out.total = out.gradient_part + out.potential_part;
    if (!std::isfinite(out.total)) throw std::domain_error("energy: non-finite (invalid field)");
    return out;
}

void EnergyModel::gradient(const Field& f, std::vector<double>& out) const {
    if (!f.grid.same_shape(grid_)) throw std::invalid_argument("gradient: field/grid mismatch");
    const int nx = grid_.nx, ny = grid_.ny;
    const double inv_hx = 1.0 / grid_.hx(), inv_hy = 1.0 / grid_.hy();
    const double cell = grid_.hx() * grid_.hy();
    out.resize(static_cast<size_t>(nx) * ny);

    for_rows(f.v.data(), [&](int j, const double* u, const double* dx, const double* dy) {
        const size_t off = static_cast<size_t>(j) * nx;
        kernels::flux(dx, dy, fx_.data() + off, fy_.data() + off, nx, nfk_, be_);
        const double g = ghost_[j];
        ghost_[j] = (g == 0.0) ? 0.0 : nfk_.phi_of_g2(g * g) * g;
        kernels::pot_grad(u, A_.data() + off, pg_.data() + off, nx, potk_, be_);
    });
    for (int j = 0; j < ny; ++j) {
        const size_t off = static_cast<size_t>(j) * nx;
        const size_t prev = static_cast<size_t>((j + ny - 1) % ny) * nx;
        kernels::divergence_row(fx_.data() + off, ghost_[j], fy_.data() + off, fy_.data() + prev,
                                pg_.data() + off, inv_hx, inv_hy, cell, out.data() + off, nx, be_);
    }
}

double EnergyModel::max_gradient(const Field& f) const {
    if (!f.grid.same_shape(grid_)) throw std::invalid_argument("max_gradient: field/grid mismatch");
    const int nx = grid_.nx;
    double m = 0.0;
    for_rows(f.v.data(), [&](int j, const double*, const double* dx, const double* dy) {
        m = std::max(m, kernels::max_g2(dx, dy, nx, be_));
        m = std::max(m, ghost_[j] * ghost_[j]);
    });
    return std::sqrt(m);
}

void EnergyModel::residual(const Field& f, ResidualOp op, std::vector<double>& out) const {
    if (!f.grid.same_shape(grid_)) throw std::invalid_argument("residual: field/grid mismatch");
    const int nx = grid_.nx, ny = grid_.ny;
    const double inv_hx = 1.0 / grid_.hx(), inv_hy = 1.0 / grid_.hy();
    const kernels::NfKernel nk =
        (op == ResidualOp::truncated) ? nfk_ : kernels::NfKernel::true_curv();
    out.resize(static_cast<size_t>(nx) * ny);

    for_rows(f.v.data(), [&](int j, const double* u, const double* dx, const double* dy) {
        const size_t off = static_cast<size_t>(j) * nx;
        kernels::flux(dx, dy, fx_.data() + off, fy_.data() + off, nx, nk, be_);
        const double g = ghost_[j];
        ghost_[j] = (g == 0.0) ? 0.0 : nk.phi_of_g2(g * g) * g;
        kernels::pot_grad(u, A_.data() + off, pg_.data() + off, nx, potk_, be_);
    });
    for (int j = 0; j < ny; ++j) {
        const size_t off = static_cast<size_t>(j) * nx;
        const size_t prev = static_cast<size_t>((j + ny - 1) % ny) * nx;
        kernels::divergence_row(fx_.data() + off, ghost_[j], fy_.data() + off, fy_.data() + prev,
                                pg_.data() + off, inv_hx, inv_hy, 1.0, out.data() + off, nx, be_);
    }
}

EnergyBreakdown energy(const Field& f, const orlicz::NFunction& nf,
                       const coeff::CoefficientField& A, const pot::Potential& V, Backend be) {
    return EnergyModel(f.grid, nf, A, V, be).breakdown(f);
}

Field energy_gradient(const Field& f, const orlicz::NFunction& nf,
                      const coeff::CoefficientField& A, const pot::Potential& V, Backend be) {
    EnergyModel model(f.grid, nf, A, V, be);
    Field g(f.grid);
    model.gradient(f, g.v);
    return g;
}

ResidualReport weak_residual(const Field& f, ResidualOp op, const orlicz::NFunction& nf,
                             const coeff::CoefficientField& A, const pot::Potential& V,
                             Backend be) {
    EnergyModel model(f.grid, nf, A, V, be);
    ResidualReport rep;
    rep.field = Field(f.grid);
    model.residual(f, op, rep.field.v);
    rep.max_norm = kernels::vmax_abs(rep.field.v.data(), rep.field.v.size(), be);
    return rep;
}

}  // namespace hetstrip::strip
