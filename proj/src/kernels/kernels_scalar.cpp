#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

// Scalar reference kernels.  Reductions run in strict left-to-right order;
// the element-wise operation sequences here are the contract the SIMD
// variants reproduce bit-for-bit.

namespace hetstrip::kernels {

NfKernel NfKernel::from(const orlicz::NFunction& nf) {
    NfKernel k;
    switch (nf.family) {
        case orlicz::NfFamily::power:
            k.kind = Kind::power;
            k.p = nf.p;
            break;
        case orlicz::NfFamily::truncated_mean_curvature:
            k.kind = Kind::truncated;
            k.L = nf.L;
            k.xL = nf.xL;
            k.yL = nf.yL;
            break;
        case orlicz::NfFamily::custom:
            k.kind = Kind::generic;
            k.generic = &nf;
            break;
    }
    return k;
}

NfKernel NfKernel::true_curv() {
    NfKernel k;
    k.kind = Kind::true_curvature;
    return k;
}

double NfKernel::phi_of_g2(double g2) const {
    switch (kind) {
        case Kind::power:
            if (p == 2.0) return 1.0;
            return std::pow(std::sqrt(g2), p - 2.0);
        case Kind::truncated:
            return orlicz::truncated_varphi(L, xL, yL, g2);
        case Kind::true_curvature:
            return 1.0 / std::sqrt(1.0 + g2);
        case Kind::generic:
            return generic->phi(std::sqrt(g2));
    }
    return 0.0;
}

double NfKernel::Phi_of_g2(double g2) const {
    switch (kind) {
        case Kind::power:
            if (p == 2.0) return 0.5 * g2;
            return std::pow(std::sqrt(g2), p) / p;
        case Kind::truncated:
            return orlicz::truncated_Phi_of_t2(L, xL, yL, g2);
        case Kind::true_curvature:
            return std::sqrt(1.0 + g2) - 1.0;
        case Kind::generic:
            return generic->Phi(std::sqrt(g2));
    }
    return 0.0;
}

PotKernel PotKernel::from(const pot::Potential& P) {
    PotKernel k;
    k.alpha = P.alpha;
    k.beta = P.beta;
    if (P.family == pot::PotFamily::ginzburg_landau) {
        k.kind = Kind::gl;
    } else {
        k.kind = Kind::generic;
        k.generic = &P;
    }
    return k;
}

double PotKernel::V(double t) const {
    if (kind == Kind::gl) {
        const double m = (t - alpha) * (t - beta);
        return m * m;
    }
    return generic->V(t);
}

double PotKernel::dV(double t) const {
    if (kind == Kind::gl) {
        const double a = t - alpha, b = t - beta;
        return 2.0 * (a * b) * (a + b);
    }
    return generic->dV(t);
}

namespace scalar_impl {

void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,
                   double inv_hy, double* dx, double* dy, int n) {
    for (int i = 0; i < n - 1; ++i) dx[i] = (u[i + 1] - u[i]) * inv_hx;
    dx[n - 1] = (right_ghost - u[n - 1]) * inv_hx;
    for (int i = 0; i < n; ++i) dy[i] = (up[i] - u[i]) * inv_hy;
}

double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g2 = dx[i] * dx[i] + dy[i] * dy[i];
        s += nf.Phi_of_g2(g2);
    }
    return s;
}

void flux(const double* dx, const double* dy, double* fx, double* fy, int n, const NfKernel& nf) {
    for (int i = 0; i < n; ++i) {
        const double g2 = dx[i] * dx[i] + dy[i] * dy[i];
        if (g2 == 0.0) {
            fx[i] = 0.0;
            fy[i] = 0.0;
            continue;
        }
        const double w = nf.phi_of_g2(g2);
        fx[i] = w * dx[i];
        fy[i] = w * dy[i];
    }
}

double pot_sum(const double* u, const double* A, int n, const PotKernel& pot) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += A[i] * pot.V(u[i]);
    return s;
}

void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot) {
    for (int i = 0; i < n; ++i) out[i] = A[i] * pot.dV(u[i]);
}

double max_g2(const double* dx, const double* dy, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, dx[i] * dx[i] + dy[i] * dy[i]);
    return m;
}

void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n) {
    for (int i = 0; i < n; ++i) {
        const double left = (i == 0) ? fx_ghost : fx[i - 1];
        const double tx = (left - fx[i]) * inv_hx;
        const double ty = (fy_prev[i] - fy[i]) * inv_hy;
        out[i] = cell * ((tx + ty) + potg[i]);
    }
}

double vsum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double vdot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double vmax_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void vaxpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n) {
    if (box) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = std::min(hi, std::max(lo, u[i] + t * d[i]));
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = u[i] + t * d[i];
    }
}

double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n) {
    double m = 0.0;
    if (box) {
        for (std::size_t i = 0; i < n; ++i) {
            double v;
            if (u[i] <= lo)
                v = std::min(g[i], 0.0);
            else if (u[i] >= hi)
                v = std::max(g[i], 0.0);
            else
                v = g[i];
            m = std::max(m, std::fabs(v));
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(g[i]));
    }
    return m;
}

}  // namespace scalar_impl

// ---- dispatch ----

#define HETSTRIP_DISPATCH(call)                   \
    switch (be) {                                 \
        case Backend::avx2:                       \
            return avx2_impl::call;               \
        case Backend::neon:                       \
            return neon_impl::call;               \
        case Backend::scalar:                     \
        default:                                  \
            return scalar_impl::call;             \
    }

void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,
                   double inv_hy, double* dx, double* dy, int n, Backend be) {
    HETSTRIP_DISPATCH(forward_diffs(u, up, right_ghost, inv_hx, inv_hy, dx, dy, n))
}
double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf, Backend be) {
    HETSTRIP_DISPATCH(phi_sum(dx, dy, n, nf))
}
void flux(const double* dx, const double* dy, double* fx, double* fy, int n, const NfKernel& nf,
          Backend be) {
    HETSTRIP_DISPATCH(flux(dx, dy, fx, fy, n, nf))
}
double pot_sum(const double* u, const double* A, int n, const PotKernel& pot, Backend be) {
    HETSTRIP_DISPATCH(pot_sum(u, A, n, pot))
}
void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot,
              Backend be) {
    HETSTRIP_DISPATCH(pot_grad(u, A, out, n, pot))
}
double max_g2(const double* dx, const double* dy, int n, Backend be) {
    HETSTRIP_DISPATCH(max_g2(dx, dy, n))
}
void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n, Backend be) {
    HETSTRIP_DISPATCH(divergence_row(fx, fx_ghost, fy, fy_prev, potg, inv_hx, inv_hy, cell, out, n))
}
double vsum(const double* x, std::size_t n, Backend be) { HETSTRIP_DISPATCH(vsum(x, n)) }
double vdot(const double* a, const double* b, std::size_t n, Backend be) {
    HETSTRIP_DISPATCH(vdot(a, b, n))
}
double vmax_abs(const double* x, std::size_t n, Backend be) { HETSTRIP_DISPATCH(vmax_abs(x, n)) }
void vaxpy(double a, const double* x, double* y, std::size_t n, Backend be) {
    HETSTRIP_DISPATCH(vaxpy(a, x, y, n))
}
void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n, Backend be) {
    HETSTRIP_DISPATCH(vstep_clamped(u, d, t, lo, hi, box, out, n))
}
double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n,
              Backend be) {
    HETSTRIP_DISPATCH(pg_max(u, g, lo, hi, box, n))
}

#undef HETSTRIP_DISPATCH

}  // namespace hetstrip::kernels
