#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "hetstrip/potentials/potential.hpp"

using namespace hetstrip;
using pot::build_potential;
using pot::PotFamily;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("ginzburg-landau values and roots") {
    const auto V = build_potential(PotFamily::ginzburg_landau, -1.0, 1.0);
    CHECK(V.V(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(V.V(1.0) == 0.0);
    CHECK(V.V(-1.0) == 0.0);
    // midpoint stationarity of the quartic
    const auto W = build_potential(PotFamily::ginzburg_landau, 0.2, 0.7);
    CHECK(W.dV(0.45) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(W.V(0.2) == 0.0);
    CHECK(W.V(0.7) == 0.0);
}

TEST_CASE("sine-gordon values and constraints") {
    const auto V = build_potential(PotFamily::sine_gordon, -0.5, 0.5);
    CHECK(V.V(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(V.V(0.5)) < 1e-14);
    CHECK(std::fabs(V.V(-0.5)) < 1e-14);
    CHECK_THROWS_AS(build_potential(PotFamily::sine_gordon, -0.4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_potential(PotFamily::ginzburg_landau, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_potential(PotFamily::ginzburg_landau, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("phi-coupled family") {
    auto nf2 = std::make_shared<orlicz::NFunction>(orlicz::build_power(2.0));
    const auto V = build_potential(PotFamily::phi_coupled, -0.5, 1.5, nf2);
    // with the quadratic N-function this is half the Ginzburg-Landau quartic
    for (double t = -1.5; t <= 2.5; t += 0.01) {
        const double g = (t + 0.5) * (t - 1.5);
        CHECK(std::fabs(V.V(t) - 0.5 * g * g) < 1e-14);
    }
    CHECK(V.dV(-0.5) == 0.0);
    CHECK(V.dV(1.5) == 0.0);
    CHECK_THROWS_AS(build_potential(PotFamily::phi_coupled, -1.0, 1.0, nullptr),
                    std::invalid_argument);
}

TEST_CASE("dV matches central differences of V") {
    auto nfL = std::make_shared<orlicz::NFunction>(orlicz::build_truncated(1.0));
    const pot::Potential pots[] = {
        build_potential(PotFamily::ginzburg_landau, -1.0, 1.0),
        build_potential(PotFamily::sine_gordon, -0.5, 0.5),
        build_potential(PotFamily::phi_coupled, -0.3, 0.9, nfL),
    };
    for (const auto& V : pots) {
        const double h = 1e-6;
        for (double t = V.alpha - 1.0; t <= V.beta + 1.0; t += 0.01) {
            const double fd = (V.V(t + h) - V.V(t - h)) / (2.0 * h);
            const double scale = std::max(1.0, std::fabs(fd));
            CHECK(std::fabs(V.dV(t) - fd) / scale < 1e-6);
        }
    }
}

TEST_CASE("condition report for ginzburg-landau") {
    const auto nf = orlicz::build_truncated(1.0);
    const auto V = build_potential(PotFamily::ginzburg_landau, -1.0, 1.0);
    const auto rep = pot::check_conditions(V, nf, 2.0);

    // (V6): even polynomial in t
    CHECK(rep.v6_asymmetry == 0.0);
    CHECK(rep.v6_pass);
    // (V5): V''(+-beta) = 8 beta^2
    CHECK(rep.d2V_beta == doctest::Approx(8.0).epsilon(1e-4));
    CHECK(rep.d2V_alpha == doctest::Approx(8.0).epsilon(1e-4));
    CHECK(rep.v5_pass);
    // (V4): |V'| max at t = +-1/sqrt(3): 8/(3 sqrt 3)
    CHECK(rep.M4 == doctest::Approx(8.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-5));
    // (V7)/(V8): compatible with the truncated N-function
    CHECK(rep.v7_bounded);
    CHECK(rep.d1 > 0.0);
    CHECK(rep.v8_pass);
    CHECK(rep.mu8 > 0.0);

    CHECK_THROWS_AS(pot::check_conditions(V, nf, 0.5), std::invalid_argument);
}

TEST_CASE("condition report for sine-gordon: M = pi") {
    const auto nf = orlicz::build_truncated(1.0);
    const auto V = build_potential(PotFamily::sine_gordon, -0.5, 0.5);
    const auto rep = pot::check_conditions(V, nf, 1.0);
    CHECK(rep.M4 == doctest::Approx(kPi).epsilon(1e-6));
    CHECK(rep.v6_pass);  // cosine is even
}

TEST_CASE("coupled potential realizes the strong-interaction conditions") {
    // V(t) = Phi(|(t+b)(t-b)|) is even with mu*Phi(|t-b|) <= V near the well
    auto nfL = std::make_shared<orlicz::NFunction>(orlicz::build_truncated(1.0));
    const auto V = build_potential(PotFamily::phi_coupled, -0.5, 0.5, nfL);
    const auto rep = pot::check_conditions(V, *nfL, 1.0);
    CHECK(rep.v6_pass);
    CHECK(rep.v8_pass);
    CHECK(rep.mu8 > 0.0);
    CHECK(rep.v7_bounded);
}

TEST_CASE("(V7) flags a slope density that outpaces the potential near a root") {
    // |V'| ~ |t-beta| for the quartic, but phi(s)s = s^2 for the cubic power
    // family: the ratio blows up toward the root and the fit must say so
    const auto p3 = orlicz::build_power(3.0);
    const auto V = build_potential(PotFamily::ginzburg_landau, -1.0, 1.0);
    const auto rep = pot::check_conditions(V, p3, 2.0);
    CHECK(!rep.v7_bounded);

    const auto nfL = orlicz::build_truncated(1.0);
    CHECK(pot::check_conditions(V, nfL, 2.0).v7_bounded);
}

TEST_CASE("(V4) uniformity: M shrinks with the wells") {
    const auto nf = orlicz::build_truncated(1.0);
    double prev = 1e300;
    for (double r : {0.4, 0.2, 0.1, 0.05}) {
        const auto V = build_potential(PotFamily::ginzburg_landau, -r, r);
        const auto rep = pot::check_conditions(V, nf, 1.0);
        CHECK(rep.M4 < prev);
        prev = rep.M4;
    }
    CHECK(prev < 0.01);  // 8 r^3/(3 sqrt 3) at r = 0.05
}
