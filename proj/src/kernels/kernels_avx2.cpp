#include "kernels_impl.hpp"

// AVX2 variants of the inner-loop kernels.  Per-element operation sequences
// mirror the scalar reference exactly (no FMA, IEEE sqrt/div), so map-type
// kernels are bit-identical to scalar; reductions use vector accumulators
// folded in a fixed lane order.  Families without a branch-free vector form
// (generic N-functions, power p != 2, non-polynomial potentials) run the
// scalar reference loop so results never depend on the selected backend.

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace hetstrip::kernels::avx2_impl {

bool compiled() { return true; }

namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

inline double hsum(__m256d v) {
    // fixed fold order: (lane0+lane1) + (lane2+lane3)
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double hmax(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

struct TruncConsts {
    __m256d L, Lp1, xL, yL, one, half, three, c0v, c1v, kv;
    explicit TruncConsts(const NfKernel& nf) {
        const double c0 = std::sqrt(1.0 + nf.L) - 1.0;
        const double c1 = c0 + nf.xL / 6.0 + 0.5 * nf.yL;
        const double k = 0.5 * nf.yL;
        L = _mm256_set1_pd(nf.L);
        Lp1 = _mm256_set1_pd(nf.L + 1.0);
        xL = _mm256_set1_pd(nf.xL);
        yL = _mm256_set1_pd(nf.yL);
        one = _mm256_set1_pd(1.0);
        half = _mm256_set1_pd(0.5);
        three = _mm256_set1_pd(3.0);
        c0v = _mm256_set1_pd(c0);
        c1v = _mm256_set1_pd(c1);
        kv = _mm256_set1_pd(k);
    }
};

// varphi_L(u), u = g^2
inline __m256d trunc_varphi(const TruncConsts& c, __m256d u) {
    const __m256d p1 = _mm256_div_pd(c.one, _mm256_sqrt_pd(_mm256_add_pd(c.one, u)));
    const __m256d w = _mm256_sub_pd(_mm256_sub_pd(u, c.L), c.one);
    const __m256d p2 =
        _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(c.xL, w), w), c.yL);
    __m256d r = c.yL;
    r = _mm256_blendv_pd(r, p2, _mm256_cmp_pd(u, c.Lp1, _CMP_LE_OQ));
    r = _mm256_blendv_pd(r, p1, _mm256_cmp_pd(u, c.L, _CMP_LE_OQ));
    return r;
}

// Phi_L as a function of u = t^2
inline __m256d trunc_Phi(const TruncConsts& c, __m256d u) {
    const __m256d s = _mm256_sqrt_pd(_mm256_add_pd(c.one, u));
    const __m256d p1 = _mm256_sub_pd(s, c.one);
    const __m256d w = _mm256_sub_pd(_mm256_sub_pd(u, c.L), c.one);
    const __m256d w3 = _mm256_mul_pd(_mm256_mul_pd(w, w), w);
    const __m256d a = _mm256_div_pd(_mm256_mul_pd(c.xL, _mm256_add_pd(w3, c.one)), c.three);
    const __m256d b = _mm256_mul_pd(c.yL, _mm256_sub_pd(u, c.L));
    const __m256d p2 = _mm256_add_pd(c.c0v, _mm256_mul_pd(c.half, _mm256_add_pd(a, b)));
    const __m256d p3 = _mm256_add_pd(c.c1v, _mm256_mul_pd(c.kv, w));
    __m256d r = p3;
    r = _mm256_blendv_pd(r, p2, _mm256_cmp_pd(u, c.Lp1, _CMP_LE_OQ));
    r = _mm256_blendv_pd(r, p1, _mm256_cmp_pd(u, c.L, _CMP_LE_OQ));
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
    const __m256d vhx = _mm256_set1_pd(inv_hx), vhy = _mm256_set1_pd(inv_hy);
    int i = 0;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d a = _mm256_loadu_pd(u + i);
        const __m256d b = _mm256_loadu_pd(u + i + 1);
        _mm256_storeu_pd(dx + i, _mm256_mul_pd(_mm256_sub_pd(b, a), vhx));
    }
    for (; i < n - 1; ++i) dx[i] = (u[i + 1] - u[i]) * inv_hx;
    dx[n - 1] = (right_ghost - u[n - 1]) * inv_hx;
    i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(u + i);
        const __m256d b = _mm256_loadu_pd(up + i);
        _mm256_storeu_pd(dy + i, _mm256_mul_pd(_mm256_sub_pd(b, a), vhy));
    }
    for (; i < n; ++i) dy[i] = (up[i] - u[i]) * inv_hy;
}

double phi_sum(const double* dx, const double* dy, int n, const NfKernel& nf) {
    if (!vectorizable(nf)) return scalar_impl::phi_sum(dx, dy, n, nf);
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    if (nf.kind == NfKernel::Kind::power) {  // p == 2
        const __m256d half = _mm256_set1_pd(0.5);
        for (; i + 4 <= n; i += 4) {
            const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
            const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(half, g2));
        }
    } else if (nf.kind == NfKernel::Kind::true_curvature) {
        const __m256d one = _mm256_set1_pd(1.0);
        for (; i + 4 <= n; i += 4) {
            const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
            const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
            acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_sqrt_pd(_mm256_add_pd(one, g2)), one));
        }
    } else {
        const TruncConsts c(nf);
        for (; i + 4 <= n; i += 4) {
            const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
            const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
            acc = _mm256_add_pd(acc, trunc_Phi(c, g2));
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
        for (; i + 4 <= n; i += 4) {
            _mm256_storeu_pd(fx + i, _mm256_loadu_pd(dx + i));
            _mm256_storeu_pd(fy + i, _mm256_loadu_pd(dy + i));
        }
    } else if (nf.kind == NfKernel::Kind::true_curvature) {
        const __m256d one = _mm256_set1_pd(1.0);
        for (; i + 4 <= n; i += 4) {
            const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
            const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
            const __m256d w = _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_add_pd(one, g2)));
            _mm256_storeu_pd(fx + i, _mm256_mul_pd(w, a));
            _mm256_storeu_pd(fy + i, _mm256_mul_pd(w, b));
        }
    } else {
        const TruncConsts c(nf);
        for (; i + 4 <= n; i += 4) {
            const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
            const __m256d g2 = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
            const __m256d w = trunc_varphi(c, g2);
            _mm256_storeu_pd(fx + i, _mm256_mul_pd(w, a));
            _mm256_storeu_pd(fy + i, _mm256_mul_pd(w, b));
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
    const __m256d va = _mm256_set1_pd(pot.alpha), vb = _mm256_set1_pd(pot.beta);
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_loadu_pd(u + i);
        const __m256d a = _mm256_sub_pd(t, va), b = _mm256_sub_pd(t, vb);
        const __m256d m = _mm256_mul_pd(a, b);
        const __m256d v = _mm256_mul_pd(m, m);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(A + i), v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += A[i] * pot.V(u[i]);
    return s;
}

void pot_grad(const double* u, const double* A, double* out, int n, const PotKernel& pot) {
    if (pot.kind != PotKernel::Kind::gl) return scalar_impl::pot_grad(u, A, out, n, pot);
    const __m256d va = _mm256_set1_pd(pot.alpha), vb = _mm256_set1_pd(pot.beta);
    const __m256d two = _mm256_set1_pd(2.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_loadu_pd(u + i);
        const __m256d a = _mm256_sub_pd(t, va), b = _mm256_sub_pd(t, vb);
        const __m256d dv = _mm256_mul_pd(_mm256_mul_pd(two, _mm256_mul_pd(a, b)), _mm256_add_pd(a, b));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(A + i), dv));
    }
    for (; i < n; ++i) out[i] = A[i] * pot.dV(u[i]);
}

double max_g2(const double* dx, const double* dy, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(dx + i), b = _mm256_loadu_pd(dy + i);
        acc = _mm256_max_pd(acc, _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
    }
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, dx[i] * dx[i] + dy[i] * dy[i]);
    return m;
}

void divergence_row(const double* fx, double fx_ghost, const double* fy, const double* fy_prev,
                    const double* potg, double inv_hx, double inv_hy, double cell, double* out,
                    int n) {
    const __m256d vhx = _mm256_set1_pd(inv_hx), vhy = _mm256_set1_pd(inv_hy);
    const __m256d vc = _mm256_set1_pd(cell);
    {
        const double tx = (fx_ghost - fx[0]) * inv_hx;
        const double ty = (fy_prev[0] - fy[0]) * inv_hy;
        out[0] = cell * ((tx + ty) + potg[0]);
    }
    int i = 1;
    for (; i + 4 <= n; i += 4) {
        const __m256d left = _mm256_loadu_pd(fx + i - 1);
        const __m256d cur = _mm256_loadu_pd(fx + i);
        const __m256d tx = _mm256_mul_pd(_mm256_sub_pd(left, cur), vhx);
        const __m256d ty = _mm256_mul_pd(
            _mm256_sub_pd(_mm256_loadu_pd(fy_prev + i), _mm256_loadu_pd(fy + i)), vhy);
        const __m256d r =
            _mm256_mul_pd(vc, _mm256_add_pd(_mm256_add_pd(tx, ty), _mm256_loadu_pd(potg + i)));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) {
        const double tx = (fx[i - 1] - fx[i]) * inv_hx;
        const double ty = (fy_prev[i] - fy[i]) * inv_hy;
        out[i] = cell * ((tx + ty) + potg[i]);
    }
}

double vsum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

double vdot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double vmax_abs(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    double m = hmax(acc);
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void vaxpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r =
            _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void vstep_clamped(const double* u, const double* d, double t, double lo, double hi, bool box,
                   double* out, std::size_t n) {
    const __m256d vt = _mm256_set1_pd(t), vlo = _mm256_set1_pd(lo), vhi = _mm256_set1_pd(hi);
    std::size_t i = 0;
    if (box) {
        for (; i + 4 <= n; i += 4) {
            __m256d r =
                _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_mul_pd(vt, _mm256_loadu_pd(d + i)));
            r = _mm256_min_pd(vhi, _mm256_max_pd(vlo, r));
            _mm256_storeu_pd(out + i, r);
        }
        for (; i < n; ++i) out[i] = std::min(hi, std::max(lo, u[i] + t * d[i]));
    } else {
        for (; i + 4 <= n; i += 4) {
            const __m256d r =
                _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_mul_pd(vt, _mm256_loadu_pd(d + i)));
            _mm256_storeu_pd(out + i, r);
        }
        for (; i < n; ++i) out[i] = u[i] + t * d[i];
    }
}

double pg_max(const double* u, const double* g, double lo, double hi, bool box, std::size_t n) {
    if (!box) return vmax_abs(g, n);
    const __m256d vlo = _mm256_set1_pd(lo), vhi = _mm256_set1_pd(hi);
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vu = _mm256_loadu_pd(u + i), vg = _mm256_loadu_pd(g + i);
        __m256d v = vg;
        v = _mm256_blendv_pd(v, _mm256_max_pd(vg, zero), _mm256_cmp_pd(vu, vhi, _CMP_GE_OQ));
        v = _mm256_blendv_pd(v, _mm256_min_pd(vg, zero), _mm256_cmp_pd(vu, vlo, _CMP_LE_OQ));
        acc = _mm256_max_pd(acc, abs_pd(v));
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

}  // namespace hetstrip::kernels::avx2_impl

#else  // AVX2 not compiled in: delegating stubs keep the dispatcher linkable.

namespace hetstrip::kernels::avx2_impl {

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

}  // namespace hetstrip::kernels::avx2_impl

#endif
