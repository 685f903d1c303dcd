#include "kernels_impl.hpp"

// NEON (AArch64) variants, mirroring the scalar operation sequences exactly
// like the AVX2 TU does; two lanes instead of four.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace hetstrip::kernels::neon_impl {

bool compiled() { return true; }

namespace {

inline double hsum(float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); }
inline double hmax(float64x2_t v) {
    return std::max(vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1));
}

struct TruncConsts {
    float64x2_t L, Lp1, xL, yL, one, half, three, c0v, c1v, kv;
    explicit TruncConsts(const NfKernel& nf) {
        const double c0 = std::sqrt(1.0 + nf.L) - 1.0;
        const double c1 = c0 + nf.xL / 6.0 + 0.5 * nf.yL;
        const double k = 0.5 * nf.yL;
        L = vdupq_n_f64(nf.L);
        Lp1 = vdupq_n_f64(nf.L + 1.0);
        xL = vdupq_n_f64(nf.xL);
        yL = vdupq_n_f64(nf.yL);
        one = vdupq_n_f64(1.0);
        half = vdupq_n_f64(0.5);
        three = vdupq_n_f64(3.0);
        c0v = vdupq_n_f64(c0);
        c1v = vdupq_n_f64(c1);
        kv = vdupq_n_f64(k);
    }
};

inline float64x2_t trunc_varphi(const TruncConsts& c, float64x2_t u) {
    const float64x2_t p1 = vdivq_f64(c.one, vsqrtq_f64(vaddq_f64(c.one, u)));
    const float64x2_t w = vsubq_f64(vsubq_f64(u, c.L), c.one);
    const float64x2_t p2 = vaddq_f64(vmulq_f64(vmulq_f64(c.xL, w), w), c.yL);
    float64x2_t r = c.yL;
    r = vbslq_f64(vcleq_f64(u, c.Lp1), p2, r);
    r = vbslq_f64(vcleq_f64(u, c.L), p1, r);
    return r;
}

inline float64x2_t trunc_Phi(const TruncConsts& c, float64x2_t u) {
    const float64x2_t s = vsqrtq_f64(vaddq_f64(c.one, u));
    const float64x2_t p1 = vsubq_f64(s, c.one);
    const float64x2_t w = vsubq_f64(vsubq_f64(u, c.L), c.one);
    const float64x2_t w3 = vmulq_f64(vmulq_f64(w, w), w);
    const float64x2_t a = vdivq_f64(vmulq_f64(c.xL, vaddq_f64(w3, c.one)), c.three);
    const float64x2_t b = vmulq_f64(c.yL, vsubq_f64(u, c.L));
    const float64x2_t p2 = vaddq_f64(c.c0v, vmulq_f64(c.half, vaddq_f64(a, b)));
    const float64x2_t p3 = vaddq_f64(c.c1v, vmulq_f64(c.kv, w));
    float64x2_t r = p3;
    r = vbslq_f64(vcleq_f64(u, c.Lp1), p2, r);
    r = vbslq_f64(vcleq_f64(u, c.L), p1, r);
    return r;
}

inline bool vectorizable(const NfKernel& nf) {
    switch (nf.kind) {
        case NfKernel::Kind::truncated:
        case NfKernel::Kind::true_curvature:
            return true;
        case NfKernel::Kind::power:
            return nf.p == 2.0;
        case NfKernel::Kind::generic:
            return false;
    }
    return false;
}

}  // namespace

void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,
                   double inv_hy, double* dx, double* dy, int n) {
    const float64x2_t vhx = vdupq_n_f64(inv_hx), vhy = vdupq_n_f64(inv_hy);
    int i = 0;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t a = vld1q_f64(u + i);
        const float64x2_t b = vld1q_f64(u + i + 1);
        vst1q_f64(dx + i, vmulq_f64(vsubq_f64(b, a), vhx));
    }
    for (; i < n - 1; ++i) dx[i] = (u[i + 1] - u[i]) * inv_hx;
    dx[n - 1] = (right_ghost - u[n - 1]) * inv_hx;
    i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(u + i);
        const float64x2_t b = vld1q_f64(up + i);
        vst1q_f64(dy + i, vmulq_f64(vsubq_f64(b, a), vhy));
    }
    for (; i < n; ++i) dy[i] = (up[i] - u[i]) * inv_hy;
}

double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf) {
    if (!vectorizable(nf)) return scalar_impl::phi_sum(dx, dy, n, nf);
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    if (nf.kind == NfKernel::Kind::power) {  // p == 2
        const float64x2_t half = vdupq_n_f64(0.5);
        for (; i + 2 <= n; i += 2) {
            const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
            const float64x2_t g2 = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
            acc = vaddq_f64(acc, vmulq_f64(half, g2));
        }
    } else if (nf.kind == NfKernel::Kind::true_curvature) {
        const float64x2_t one = vdupq_n_f64(1.0);
        for (; i + 2 <= n; i += 2) {
            const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
            const float64x2_t g2 = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
            acc = vaddq_f64(acc, vsubq_f64(vsqrtq_f64(vaddq_f64(one, g2)), one));
        }
    } else {
        const TruncConsts c(nf);
        for (; i + 2 <= n; i += 2) {
            const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
            const float64x2_t g2 = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
            acc = vaddq_f64(acc, trunc_Phi(c, g2));
        }
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double g2 = dx[i] * dx[i] + dy[i] * dy[i];
        s += nf.Phi_of_g2(g2);
    }
    return s;
}

void flux(const double* dx, const double* dy, double* fx, double* fy, int n, const NfKernel& nf) {
    if (!vectorizable(nf)) return scalar_impl::flux(dx, dy, fx, fy, n, nf);
    int i = 0;
    if (nf.kind == NfKernel::Kind::power) {  // p == 2: w = 1
        for (; i + 2 <= n; i += 2) {
            vst1q_f64(fx + i, vld1q_f64(dx + i));
            vst1q_f64(fy + i, vld1q_f64(dy + i));
        }
    } else if (nf.kind == NfKernel::Kind::true_curvature) {
        const float64x2_t one = vdupq_n_f64(1.0);
        for (; i + 2 <= n; i += 2) {
            const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
            const float64x2_t g2 = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
            const float64x2_t w = vdivq_f64(one, vsqrtq_f64(vaddq_f64(one, g2)));
            vst1q_f64(fx + i, vmulq_f64(w, a));
            vst1q_f64(fy + i, vmulq_f64(w, b));
        }
    } else {
        const TruncConsts c(nf);
        for (; i + 2 <= n; i += 2) {
            const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
            const float64x2_t g2 = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
            const float64x2_t w = trunc_varphi(c, g2);
            vst1q_f64(fx + i, vmulq_f64(w, a));
            vst1q_f64(fy + i, vmulq_f64(w, b));
        }
    }
    for (; i < n; ++i) {
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
    if (pot.kind != PotKernel::Kind::gl) return scalar_impl::pot_sum(u, A, n, pot);
    const float64x2_t va = vdupq_n_f64(pot.alpha), vb = vdupq_n_f64(pot.beta);
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t t = vld1q_f64(u + i);
        const float64x2_t a = vsubq_f64(t, va), b = vsubq_f64(t, vb);
        const float64x2_t m = vmulq_f64(a, b);
        const float64x2_t v = vmulq_f64(m, m);
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(A + i), v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += A[i] * pot.V(u[i]);
    return s;
}

void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot) {
    if (pot.kind != PotKernel::Kind::gl) return scalar_impl::pot_grad(u, A, out, n, pot);
    const float64x2_t va = vdupq_n_f64(pot.alpha), vb = vdupq_n_f64(pot.beta);
    const float64x2_t two = vdupq_n_f64(2.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t t = vld1q_f64(u + i);
        const float64x2_t a = vsubq_f64(t, va), b = vsubq_f64(t, vb);
        const float64x2_t dv = vmulq_f64(vmulq_f64(two, vmulq_f64(a, b)), vaddq_f64(a, b));
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(A + i), dv));
    }
    for (; i < n; ++i) out[i] = A[i] * pot.dV(u[i]);
}

double max_g2(const double* dx, const double* dy, int n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(dx + i), b = vld1q_f64(dy + i);
        acc = vmaxq_f64(acc, vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)));
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, dx[i] * dx[i] + dy[i] * dy[i]);
    return m;
}

void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n) {
    const float64x2_t vhx = vdupq_n_f64(inv_hx), vhy = vdupq_n_f64(inv_hy);
    const float64x2_t vc = vdupq_n_f64(cell);
    {
        const double tx = (fx_ghost - fx[0]) * inv_hx;
        const double ty = (fy_prev[0] - fy[0]) * inv_hy;
        out[0] = cell * ((tx + ty) + potg[0]);
    }
    int i = 1;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t left = vld1q_f64(fx + i - 1);
        const float64x2_t cur = vld1q_f64(fx + i);
        const float64x2_t tx = vmulq_f64(vsubq_f64(left, cur), vhx);
        const float64x2_t ty = vmulq_f64(vsubq_f64(vld1q_f64(fy_prev + i), vld1q_f64(fy + i)), vhy);
        const float64x2_t r = vmulq_f64(vc, vaddq_f64(vaddq_f64(tx, ty), vld1q_f64(potg + i)));
        vst1q_f64(out + i, r);
    }
    for (; i < n; ++i) {
        const double tx = (fx[i - 1] - fx[i]) * inv_hx;
        const double ty = (fy_prev[i] - fy[i]) * inv_hy;
        out[i] = cell * ((tx + ty) + potg[i]);
    }
}

double vsum(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double vdot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double vmax_abs(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void vaxpy(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t r = vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i)));
        vst1q_f64(y + i, r);
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n) {
    const float64x2_t vt = vdupq_n_f64(t), vlo = vdupq_n_f64(lo), vhi = vdupq_n_f64(hi);
    std::size_t i = 0;
    if (box) {
        for (; i + 2 <= n; i += 2) {
            float64x2_t r = vaddq_f64(vld1q_f64(u + i), vmulq_f64(vt, vld1q_f64(d + i)));
            r = vminq_f64(vhi, vmaxq_f64(vlo, r));
            vst1q_f64(out + i, r);
        }
        for (; i < n; ++i) out[i] = std::min(hi, std::max(lo, u[i] + t * d[i]));
    } else {
        for (; i + 2 <= n; i += 2) {
            const float64x2_t r = vaddq_f64(vld1q_f64(u + i), vmulq_f64(vt, vld1q_f64(d + i)));
            vst1q_f64(out + i, r);
        }
        for (; i < n; ++i) out[i] = u[i] + t * d[i];
    }
}

double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n) {
    if (!box) return vmax_abs(g, n);
    const float64x2_t vlo = vdupq_n_f64(lo), vhi = vdupq_n_f64(hi);
    const float64x2_t zero = vdupq_n_f64(0.0);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vu = vld1q_f64(u + i), vg = vld1q_f64(g + i);
        float64x2_t v = vg;
        v = vbslq_f64(vcgeq_f64(vu, vhi), vmaxq_f64(vg, zero), v);
        v = vbslq_f64(vcleq_f64(vu, vlo), vminq_f64(vg, zero), v);
        acc = vmaxq_f64(acc, vabsq_f64(v));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        double v;
        if (u[i] <= lo)
            v = std::min(g[i], 0.0);
        else if (u[i] >= hi)
            v = std::max(g[i], 0.0);
        else
            v = g[i];
        m = std::max(m, std::fabs(v));
    }
    return m;
}

}  // namespace hetstrip::kernels::neon_impl

#else  // not AArch64: delegating stubs

namespace hetstrip::kernels::neon_impl {

bool compiled() { return false; }

void forward_diffs(const double* u, const double* up, double right_ghost, double inv_hx,
                   double inv_hy, double* dx, double* dy, int n) {
    scalar_impl::forward_diffs(u, up, right_ghost, inv_hx, inv_hy, dx, dy, n);
}
double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf) {
    return scalar_impl::phi_sum(dx, dy, n, nf);
}
void flux(const double* dx, const double* dy, double* fx, double* fy, int n, const NfKernel& nf) {
    scalar_impl::flux(dx, dy, fx, fy, n, nf);
}
double pot_sum(const double* u, const double* A, int n, const PotKernel& pot) {
    return scalar_impl::pot_sum(u, A, n, pot);
}
void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot) {
    scalar_impl::pot_grad(u, A, out, n, pot);
}
double max_g2(const double* dx, const double* dy, int n) { return scalar_impl::max_g2(dx, dy, n); }
void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n) {
    scalar_impl::divergence_row(fx, fx_ghost, fy, fy_prev, potg, inv_hx, inv_hy, cell, out, n);
}
double vsum(const double* x, std::size_t n) { return scalar_impl::vsum(x, n); }
double vdot(const double* a, const double* b, std::size_t n) { return scalar_impl::vdot(a, b, n); }
double vmax_abs(const double* x, std::size_t n) { return scalar_impl::vmax_abs(x, n); }
void vaxpy(double a, const double* x, double* y, std::size_t n) {
    scalar_impl::vaxpy(a, x, y, n);
}
void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n) {
    scalar_impl::vstep_clamped(u, d, t, lo, hi, box, out, n);
}
double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n) {
    return scalar_impl::pg_max(u, g, lo, hi, box, n);
}

}  // namespace hetstrip::kernels::neon_impl

#endif
