#pragma once

// Double-well potential families V_{alpha,beta} >= 0 vanishing exactly at the
// two wells, with analytic derivatives and numerical checkers for the
// structural conditions (V1)-(V8) used by the energy and the sweeps.

#include <memory>
#include <string>

#include "hetstrip/orlicz/nfunction.hpp"

namespace hetstrip::pot {

enum class PotFamily { ginzburg_landau, sine_gordon, phi_coupled };

struct Potential {
    PotFamily family = PotFamily::ginzburg_landau;
    double alpha = -1.0;
    double beta = 1.0;
    std::shared_ptr<const orlicz::NFunction> coupled;  // phi-coupled only

    double V(double t) const;
    double dV(double t) const;
};

// ginzburg-landau: V = (t-alpha)^2 (t-beta)^2
// sine-gordon:     V = beta + beta*cos(t*pi/beta), requires alpha == -beta
// phi-coupled:     V = Phi(|(t-alpha)(t-beta)|) with dV = phi(|g|)*g*g'
Potential build_potential(PotFamily family, double alpha, double beta,
                          std::shared_ptr<const orlicz::NFunction> coupled = nullptr);

struct ConditionReport {
    // (V4): sup |V'| on (alpha,beta); the witnessed constant M
    double M4 = 0.0;
    bool v4_bounded = false;

    // (V5): second differences of V at the wells
    double d2V_alpha = 0.0, d2V_beta = 0.0;
    bool v5_pass = false;

    // (V6): max |V(t) - V(-t)| on [-lambda, lambda]
    double v6_asymmetry = 0.0;
    bool v6_pass = false;

    // (V7): fitted d1..d4 with d2 = d4 = 1 (ratio maximization near the roots)
    double d1 = 0.0, d2 = 1.0, d3 = 0.0, d4 = 1.0;
    bool v7_bounded = false;

    // (V8): largest feasible mu on (beta-theta, beta+theta), theta = beta/2
    double mu8 = 0.0;
    double theta = 0.0;
    bool v8_pass = false;
};

// Samples |V'|, second differences and the (V7)/(V8) ratios on dense grids.
// lambda must exceed max{|alpha|,|beta|}; failures are report entries.
ConditionReport check_conditions(const Potential& V, const orlicz::NFunction& nf, double lambda);

}  // namespace hetstrip::pot
