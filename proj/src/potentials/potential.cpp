#include "hetstrip/potentials/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hetstrip::pot {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double Potential::V(double t) const {
    switch (family) {
        case PotFamily::ginzburg_landau: {
            // product-first form: exactly even in t when alpha = -beta
            const double m = (t - alpha) * (t - beta);
            return m * m;
        }
        case PotFamily::sine_gordon:
            return beta + beta * std::cos(t * kPi / beta);
        case PotFamily::phi_coupled: {
            const double g = (t - alpha) * (t - beta);
            return coupled->Phi(std::fabs(g));
        }
    }
    return 0.0;
}

double Potential::dV(double t) const {
    switch (family) {
        case PotFamily::ginzburg_landau: {
            const double a = t - alpha, b = t - beta;
            return 2.0 * (a * b) * (a + b);
        }
        case PotFamily::sine_gordon:
            return -kPi * std::sin(t * kPi / beta);
        case PotFamily::phi_coupled: {
            const double g = (t - alpha) * (t - beta);
            if (g == 0.0) return 0.0;  // removable: dPhi(0) = 0
            const double gp = 2.0 * t - alpha - beta;
            return coupled->dPhi(g) * gp;
        }
    }
    return 0.0;
}

Potential build_potential(PotFamily family, double alpha, double beta,
                          std::shared_ptr<const orlicz::NFunction> coupled) {
    if (!(alpha < beta)) throw std::invalid_argument("build_potential: requires alpha < beta");
    if (family == PotFamily::sine_gordon) {
        if (!(beta > 0.0) || alpha != -beta)
            throw std::invalid_argument("build_potential: sine-gordon requires alpha = -beta, beta > 0");
    }
    if (family == PotFamily::phi_coupled && !coupled)
        throw std::invalid_argument("build_potential: phi-coupled requires an N-function");
    Potential P;
    P.family = family;
    P.alpha = alpha;
    P.beta = beta;
    P.coupled = std::move(coupled);
    return P;
}

ConditionReport check_conditions(const Potential& V, const orlicz::NFunction& nf, double lambda) {
    if (!(lambda > std::max(std::fabs(V.alpha), std::fabs(V.beta))))
        throw std::invalid_argument("check_conditions: lambda must exceed max{|alpha|,|beta|}");

    ConditionReport rep;
    const int n = 10000;

    // (V4): dense sampling of |V'| on (alpha, beta)
    double M = 0.0;
    for (int i = 1; i < n; ++i) {
        const double t = V.alpha + (V.beta - V.alpha) * i / n;
        M = std::max(M, std::fabs(V.dV(t)));
    }
    rep.M4 = M;
    rep.v4_bounded = std::isfinite(M);

    // (V5): central second differences at the wells, step 1e-4
    const double h = 1e-4;
    const auto d2 = [&](double t) { return (V.V(t + h) - 2.0 * V.V(t) + V.V(t - h)) / (h * h); };
    rep.d2V_alpha = d2(V.alpha);
    rep.d2V_beta = d2(V.beta);
    rep.v5_pass = rep.d2V_alpha > 0.0 && rep.d2V_beta > 0.0;

    // (V6): evenness on [-lambda, lambda]
    double asym = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = -lambda + 2.0 * lambda * i / n;
        asym = std::max(asym, std::fabs(V.V(t) - V.V(-t)));
    }
    rep.v6_asymmetry = asym;
    rep.v6_pass = asym < 1e-12;

    // (V7): with d2 = d4 = 1, the smallest admissible d1/d3 are the suprema of
    // |V'(t)| / (phi(|t-root|)|t-root|) near each root.  A ratio that keeps
    // growing as the grid approaches the root signals incompatibility.
    const double r7 = 0.25 * (V.beta - V.alpha);
    const auto fit = [&](double root) {
        double sup = 0.0, near_root = 0.0, mid_range = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double s = r7 * i / n;  // distance from the root
            for (const double t : {root - s, root + s}) {
                const double den = nf.phi(s) * s;
                if (den <= 0.0) continue;
                const double ratio = std::fabs(V.dV(t)) / den;
                sup = std::max(sup, ratio);
                if (i <= n / 100) near_root = std::max(near_root, ratio);
                if (i >= n / 2) mid_range = std::max(mid_range, ratio);
            }
        }
        const bool bounded = near_root <= 100.0 * std::max(mid_range, 1e-300);
        return std::pair{sup, bounded};
    };
    auto [d1, b1] = fit(V.beta);
    auto [d3, b3] = fit(V.alpha);
    rep.d1 = d1;
    rep.d3 = d3;
    rep.v7_bounded = b1 && b3;

    // (V8): mu = inf V(t)/Phi(|t-beta|) on (beta-theta, beta+theta)
    rep.theta = 0.5 * V.beta;
    double mu = std::numeric_limits<double>::infinity();
    if (rep.theta > 0.0) {
        for (int i = 1; i <= n; ++i) {
            const double s = rep.theta * i / n;
            for (const double t : {V.beta - s, V.beta + s}) {
                const double den = nf.Phi(s);
                if (den <= 0.0) continue;
                mu = std::min(mu, V.V(t) / den);
            }
        }
    }
    rep.mu8 = std::isfinite(mu) ? mu : 0.0;
    rep.v8_pass = rep.mu8 > 0.0;
    return rep;
}

}  // namespace hetstrip::pot
