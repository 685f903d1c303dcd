#include "hetstrip/orlicz/nfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hetstrip::orlicz {

double NFunction::phi(double t) const {
    t = std::fabs(t);
    switch (family) {
        case NfFamily::power:
            return std::pow(t, p - 2.0);
        case NfFamily::truncated_mean_curvature:
            return truncated_varphi(L, xL, yL, t * t);
        case NfFamily::custom:
            return phi_fn(t);
    }
    return 0.0;
}

double NFunction::Phi(double t) const {
    t = std::fabs(t);
    switch (family) {
        case NfFamily::power:
            return std::pow(t, p) / p;
        case NfFamily::truncated_mean_curvature:
            return truncated_Phi_of_t2(L, xL, yL, t * t);
        case NfFamily::custom:
            return Phi_fn(t);
    }
    return 0.0;
}

double NFunction::dPhi(double t) const {
    if (t == 0.0) return 0.0;
    return phi(t) * t;
}

double NFunction::phi_prime(double t) const {
    t = std::fabs(t);
    switch (family) {
        case NfFamily::power:
            return (p - 2.0) * std::pow(t, p - 3.0);
        case NfFamily::truncated_mean_curvature:
            return 2.0 * t * truncated_varphi_du(L, xL, yL, t * t);
        case NfFamily::custom:
            if (phi_prime_fn) return phi_prime_fn(t);
            {
                const double h = 1e-6 * std::max(1.0, t);
                const double lo = std::max(t - h, 1e-300);
                return (phi_fn(t + h) - phi_fn(lo)) / (t + h - lo);
            }
    }
    return 0.0;
}

NFunction build_power(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("build_power: exponent must be > 1");
    NFunction nf;
    nf.family = NfFamily::power;
    nf.p = p;
    nf.l = p;
    nf.m = p;
    return nf;
}

NFunction build_truncated(double L) {
    if (!(L > 0.0)) throw std::invalid_argument("build_truncated: threshold must be > 0");
    NFunction nf;
    nf.family = NfFamily::truncated_mean_curvature;
    nf.L = L;
    nf.xL = std::sqrt(1.0 + L) / (4.0 * (1.0 + L) * (1.0 + L));
    nf.yL = (4.0 * L + 3.0) * nf.xL;
    const GrowthExponents ge = estimate_growth_exponents(nf);
    nf.l = ge.l;
    nf.m = ge.m;
    return nf;
}

NFunction build_custom(std::function<double(double)> phi, std::function<double(double)> Phi,
                       std::function<double(double)> phi_prime) {
    if (!phi || !Phi) throw std::invalid_argument("build_custom: phi and Phi are required");
    NFunction nf;
    nf.family = NfFamily::custom;
    nf.phi_fn = std::move(phi);
    nf.Phi_fn = std::move(Phi);
    nf.phi_prime_fn = std::move(phi_prime);
    const GrowthExponents ge = estimate_growth_exponents(nf);
    nf.l = ge.l;
    nf.m = ge.m;
    return nf;
}

double complementary_value(const NFunction& nf, double s) {
    if (s < 0.0) throw std::invalid_argument("complementary_value: s must be >= 0");
    if (s == 0.0) return 0.0;
    if (nf.family == NfFamily::power) {
        // dPhi(t) = t^{p-1}; maximizer t* = s^{1/(p-1)}, value s^q/q, 1/p+1/q=1
        const double q = nf.p / (nf.p - 1.0);
        return std::pow(s, q) / q;
    }
    // bracket the root of the increasing slope dPhi(t) = s; a density whose
    // slope stays below s (not superlinear) must fail loudly, not quietly
    double lo = 0.0, hi = 1.0;
    int expansions = 0;
    while (nf.dPhi(hi) < s) {
        lo = hi;
        hi *= 2.0;
        if (!(hi < 1e290) || ++expansions > 1000)
            throw std::runtime_error("complementary_value: bracket expansion failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (nf.dPhi(mid) < s)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    const double t = 0.5 * (lo + hi);
    return s * t - nf.Phi(t);
}

double luxemburg_norm(const NFunction& nf, std::span<const double> samples,
                      std::span<const double> weights) {
    if (samples.size() != weights.size())
        throw std::invalid_argument("luxemburg_norm: samples/weights size mismatch");
    double umax = 0.0;
    double wsum = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("luxemburg_norm: weights must be positive");
        umax = std::max(umax, std::fabs(samples[i]));
        wsum += weights[i];
    }
    if (umax == 0.0) return 0.0;

    const auto modular = [&](double lam) {
        double s = 0.0;
        for (size_t i = 0; i < samples.size(); ++i) s += weights[i] * nf.Phi(std::fabs(samples[i]) / lam);
        return s;
    };

    // Phi^{-1}(1/wsum) by bisection for the initial lower bracket
    const double target = 1.0 / wsum;
    double ta = 0.0, tb = 1.0;
    while (nf.Phi(tb) < target && tb < 1e300) tb *= 2.0;
    for (int it = 0; it < 200 && (tb - ta) > 1e-12 * tb; ++it) {
        const double mid = 0.5 * (ta + tb);
        (nf.Phi(mid) < target ? ta : tb) = mid;
    }
    double lo = umax / std::max(tb, 1e-300), hi = std::max(wsum, 1.0) * umax;
    if (lo > hi) std::swap(lo, hi);
    while (modular(lo) < 1.0 && lo > 1e-300) {
        hi = lo;
        lo *= 0.5;
    }
    while (modular(hi) > 1.0 && hi < 1e300) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (modular(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * hi) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

// (phi(t)*t)'/phi(t) + 1 evaluated through phi and its derivative
double ratio_plus_one(const NFunction& nf, double t) {
    const double ph = nf.phi(t);
    return 1.0 + (nf.phi_prime(t) * t + ph) / ph;
}

double golden_min(const NFunction& nf, double a, double b, int sign) {
    // sign=+1 minimizes ratio, sign=-1 maximizes it
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = sign * ratio_plus_one(nf, c), fd = sign * ratio_plus_one(nf, d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = sign * ratio_plus_one(nf, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = sign * ratio_plus_one(nf, d);
        }
    }
    return sign * std::min(fc, fd);
}

}  // namespace

GrowthExponents estimate_growth_exponents(const NFunction& nf, double tmin, double tmax,
                                          int samples) {
    std::vector<double> ts(samples);
    const double la = std::log(tmin), lb = std::log(tmax);
    for (int i = 0; i < samples; ++i) ts[i] = std::exp(la + (lb - la) * i / (samples - 1.0));

    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -rmin;
    int imin = 0, imax = 0;
    for (int i = 0; i < samples; ++i) {
        const double r = ratio_plus_one(nf, ts[i]);
        if (r < rmin) {
            rmin = r;
            imin = i;
        }
        if (r > rmax) {
            rmax = r;
            imax = i;
        }
    }
    const auto bracket = [&](int i) {
        const double a = ts[std::max(0, i - 1)];
        const double b = ts[std::min(samples - 1, i + 1)];
        return std::pair{a, b};
    };
    auto [a0, b0] = bracket(imin);
    rmin = std::min(rmin, golden_min(nf, a0, b0, +1));
    auto [a1, b1] = bracket(imax);
    rmax = std::max(rmax, golden_min(nf, a1, b1, -1));
    return {rmin, rmax};
}

}  // namespace hetstrip::orlicz
