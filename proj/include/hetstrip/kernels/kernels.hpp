#pragma once

// Inner-loop primitives for the strip energy, its gradient and the solver
// updates.  Each primitive has a scalar reference implementation and SIMD
// variants selected at runtime; element-wise kernels are bit-identical across
// backends, reductions may differ by rounding only.

#include <cstddef>

#include "hetstrip/kernels/backend.hpp"
#include "hetstrip/orlicz/nfunction.hpp"
#include "hetstrip/potentials/potential.hpp"

namespace hetstrip::kernels {

// What the inner loops need to evaluate the operator density.
struct NfKernel {
    enum class Kind { power, truncated, true_curvature, generic };
    Kind kind = Kind::generic;
    double p = 2.0;
    double L = 0.0, xL = 0.0, yL = 0.0;
    const orlicz::NFunction* generic = nullptr;

    static NfKernel from(const orlicz::NFunction& nf);
    static NfKernel true_curv();  // phi(t) = 1/sqrt(1+t^2), no truncation

    // reference evaluators in terms of g2 = |grad u|^2
    double phi_of_g2(double g2) const;
    double Phi_of_g2(double g2) const;
};

struct PotKernel {
    enum class Kind { gl, generic };
    Kind kind = Kind::generic;
    double alpha = 0.0, beta = 0.0;
    const pot::Potential* generic = nullptr;

    static PotKernel from(const pot::Potential& P);

    double V(double t) const;
    double dV(double t) const;
};

// ---- row primitives (rows are contiguous in x, length n) ----

// dx[i] = (u[i+1]-u[i])*inv_hx with u[n] = right_ghost; dy[i] = (up[i]-u[i])*inv_hy
void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,
                   double inv_hy, double* dx, double* dy, int n, Backend be);

// sum_i Phi(sqrt(dx^2+dy^2))
double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf, Backend be);

// fx = phi(g)*dx, fy = phi(g)*dy (both 0 where g = 0)
void flux(const double* dx, const double* dy, double* fx, double* fy, int n, const NfKernel& nf,
          Backend be);

// sum_i A[i]*V(u[i])
double pot_sum(const double* u, const double* A, int n, const PotKernel& pot, Backend be);

// out[i] = A[i]*V'(u[i])
void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot,
              Backend be);

// max_i (dx^2+dy^2)
double max_g2(const double* dx, const double* dy, int n, Backend be);

// out[i] = cell*((fx[i-1]-fx[i])*inv_hx + (fy_prev[i]-fy[i])*inv_hy + potg[i]),
// with fx[-1] = fx_ghost (the clamped-column link flux)
void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n, Backend be);

// ---- whole-array primitives ----

double vsum(const double* x, std::size_t n, Backend be);
double vdot(const double* a, const double* b, std::size_t n, Backend be);
double vmax_abs(const double* x, std::size_t n, Backend be);
void vaxpy(double a, const double* x, double* y, std::size_t n, Backend be);

// out = clamp(u + t*d, lo, hi); clamping skipped when box = false
void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n, Backend be);

// max-norm of the projected gradient for box constraints: interior entries
// count as |g|, entries at the lower/upper bound count only if g points
// out of the box.  With box = false this is just max|g|.
double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n,
              Backend be);

}  // namespace hetstrip::kernels
