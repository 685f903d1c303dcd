#pragma once

// N-functions of the form Phi(t) = \int_0^{|t|} s*phi(s) ds together with the
// truncated mean-curvature instance used by the strip energy.  The truncated
// generator is phi_L(t) = varphi_L(t^2) with
//
//   varphi_L(u) = 1/sqrt(1+u)            on [0, L]
//               = xL*(u-L-1)^2 + yL      on [L, L+1]
//               = yL                     on [L+1, inf)
//
//   xL = sqrt(1+L)/(4(1+L)^2),  yL = (4L+3)*xL.
//
// Both junctions are C^1, so phi_L is a C^1 generator and Phi_L coincides
// with sqrt(1+t^2)-1 wherever t^2 <= L (the true curvature density).

#include <cmath>
#include <functional>
#include <span>
#include <string>

namespace hetstrip::orlicz {

enum class NfFamily { power, truncated_mean_curvature, custom };

// Piecewise closed forms, shared by the scalar kernels and the tests.
inline double truncated_varphi(double L, double xL, double yL, double u) {
    if (u <= L) return 1.0 / std::sqrt(1.0 + u);
    if (u <= L + 1.0) {
        const double w = u - L - 1.0;
        return xL * w * w + yL;
    }
    return yL;
}

// d(varphi_L)/du
inline double truncated_varphi_du(double L, double xL, double /*yL*/, double u) {
    if (u <= L) {
        const double r = 1.0 + u;
        return -0.5 / (r * std::sqrt(r));
    }
    if (u <= L + 1.0) return 2.0 * xL * (u - L - 1.0);
    return 0.0;
}

// Phi_L as a function of u = t^2:  Phi_L(t) = (1/2) \int_0^{t^2} varphi_L.
inline double truncated_Phi_of_t2(double L, double xL, double yL, double u) {
    if (u <= L) return std::sqrt(1.0 + u) - 1.0;
    const double c0 = std::sqrt(1.0 + L) - 1.0;
    if (u <= L + 1.0) {
        const double w = u - L - 1.0;
        return c0 + 0.5 * (xL * (w * w * w + 1.0) / 3.0 + yL * (u - L));
    }
    return c0 + xL / 6.0 + 0.5 * yL + 0.5 * yL * (u - L - 1.0);
}

struct NFunction {
    NfFamily family = NfFamily::custom;

    // power: Phi(t) = |t|^p / p
    double p = 0.0;

    // truncated-mean-curvature: threshold L and derived coefficients
    double L = 0.0, xL = 0.0, yL = 0.0;

    // growth exponents; exact for power, estimated for the other families
    // (metadata only, never used on evaluation paths)
    double l = 0.0, m = 0.0;

    // custom family evaluators (phi is the slope density on t > 0)
    std::function<double(double)> phi_fn;
    std::function<double(double)> Phi_fn;
    std::function<double(double)> phi_prime_fn;  // optional, dphi/dt

    double phi(double t) const;       // slope density at |t|
    double Phi(double t) const;       // energy density
    double dPhi(double t) const;      // derivative of Phi: phi(|t|)*t
    double phi_prime(double t) const; // dphi/dt at |t| (FD fallback for custom)
};

// Phi(t) = |t|^p / p, requires p > 1.
NFunction build_power(double p);

// The quadratically capped curvature generator above, requires L > 0.
NFunction build_truncated(double L);

// Custom generator; growth exponents are estimated numerically.
NFunction build_custom(std::function<double(double)> phi,
                       std::function<double(double)> Phi,
                       std::function<double(double)> phi_prime = {});

// Legendre value max_{t>=0}{ s*t - Phi(t) } for s >= 0.  Solved through the
// monotone root of dPhi(t) = s; closed form for the power family.
double complementary_value(const NFunction& nf, double s);

// Smallest lambda with sum_i w_i * Phi(|u_i| / lambda) <= 1 (bisection to
// relative tolerance 1e-10); 0 for an all-zero sample set.
double luxemburg_norm(const NFunction& nf, std::span<const double> samples,
                      std::span<const double> weights);

// inf/sup of (phi(t)*t)'/phi(t) over a log-spaced grid with golden-section
// refinement; returns {1+inf, 1+sup} which bound phi*t^2/Phi from both sides.
struct GrowthExponents {
    double l, m;
};
GrowthExponents estimate_growth_exponents(const NFunction& nf, double tmin = 1e-6,
                                          double tmax = 1e6, int samples = 4000);

}  // namespace hetstrip::orlicz
