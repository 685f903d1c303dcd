#pragma once

// Internal per-backend entry points.  The scalar namespace is the reference;
// the avx2/neon namespaces always link (as delegating stubs when the ISA is
// unavailable at compile time) and are selected only after a runtime check.

#include "hetstrip/kernels/kernels.hpp"

namespace hetstrip::kernels {

#define HETSTRIP_KERNEL_DECLS                                                                   \
    void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,    \
                       double inv_hy, double* dx, double* dy, int n);                           \
    double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf);              \
    void flux(const double* dx, const double* dy, double* fx, double* fy, int n,                \
              const NfKernel& nf);                                                              \
    double pot_sum(const double* u, const double* A, int n, const PotKernel& pot);              \
    void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot);  \
    double max_g2(const double* dx, const double* dy, int n);                                   \
    void divergence_row(const double* fx, double fx_ghost, const double* fy,                    \
                        const double* fy_prev, const double* potg, double inv_hx,               \
                        double inv_hy, double cell, double* out, int n);                        \
    double vsum(const double* x, std::size_t n);                                                \
    double vdot(const double* a, const double* b, std::size_t n);                               \
    double vmax_abs(const double* x, std::size_t n);                                            \
    void vaxpy(double a, const double* x, double* y, std::size_t n);                            \
    void vstep_clamped(const double* u, const double* d, double t, double lo, double hi,        \
                       bool box, double* out, std::size_t n);                                   \
    double pg_max(const double* u, const double* g, double lo, double hi, bool box,             \
                  std::size_t n);

namespace scalar_impl {
HETSTRIP_KERNEL_DECLS
}
namespace avx2_impl {
bool compiled();
HETSTRIP_KERNEL_DECLS
}
namespace neon_impl {
bool compiled();
HETSTRIP_KERNEL_DECLS
}

#undef HETSTRIP_KERNEL_DECLS

}  // namespace hetstrip::kernels
