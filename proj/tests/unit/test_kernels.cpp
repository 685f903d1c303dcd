#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "hetstrip/kernels/kernels.hpp"

using namespace hetstrip;
using kernels::Backend;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, size_t n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("backend detection") {
    CHECK(kernels::backend_available(Backend::scalar));
    const Backend best = kernels::best_backend();
    CHECK(kernels::backend_available(best));
    kernels::set_default_backend(Backend::scalar);
    CHECK(kernels::default_backend() == Backend::scalar);
    kernels::set_default_backend(best);
    CHECK(kernels::default_backend() == best);
}

TEST_CASE("SIMD map kernels are bit-identical to scalar") {
    const Backend simd = kernels::best_backend();
    std::mt19937_64 rng(1234);

    const auto trunc = orlicz::build_truncated(1.0);
    const auto trunc4 = orlicz::build_truncated(4.0);
    const auto p2 = orlicz::build_power(2.0);
    const auto p15 = orlicz::build_power(1.5);
    std::vector<kernels::NfKernel> nfs;
    nfs.push_back(kernels::NfKernel::from(trunc));
    nfs.push_back(kernels::NfKernel::from(trunc4));
    nfs.push_back(kernels::NfKernel::from(p2));
    auto k15 = kernels::NfKernel::from(p15);  // generic fallback path
    k15.generic = &p15;
    nfs.push_back(k15);
    nfs.push_back(kernels::NfKernel::true_curv());

    const auto glpot = pot::build_potential(pot::PotFamily::ginzburg_landau, -0.3, 0.7);
    const auto sgpot = pot::build_potential(pot::PotFamily::sine_gordon, -0.5, 0.5);
    std::vector<kernels::PotKernel> pots;
    pots.push_back(kernels::PotKernel::from(glpot));
    auto ksg = kernels::PotKernel::from(sgpot);  // generic fallback path
    ksg.generic = &sgpot;
    pots.push_back(ksg);

    for (int n : {1, 2, 3, 4, 7, 8, 33, 400}) {
        const auto u = random_vec(rng, n);
        const auto up = random_vec(rng, n);
        const auto A = random_vec(rng, n, 0.5, 2.0);
        std::vector<double> dx_s(n), dy_s(n), dx_v(n), dy_v(n);
        kernels::forward_diffs(u.data(), up.data(), 0.1, 10.0, 16.0, dx_s.data(), dy_s.data(), n,
                               Backend::scalar);
        kernels::forward_diffs(u.data(), up.data(), 0.1, 10.0, 16.0, dx_v.data(), dy_v.data(), n,
                               simd);
        CHECK(bitwise_equal(dx_s, dx_v));
        CHECK(bitwise_equal(dy_s, dy_v));

        for (const auto& nf : nfs) {
            std::vector<double> fx_s(n), fy_s(n), fx_v(n), fy_v(n);
            kernels::flux(dx_s.data(), dy_s.data(), fx_s.data(), fy_s.data(), n, nf,
                          Backend::scalar);
            kernels::flux(dx_s.data(), dy_s.data(), fx_v.data(), fy_v.data(), n, nf, simd);
            CHECK(bitwise_equal(fx_s, fx_v));
            CHECK(bitwise_equal(fy_s, fy_v));
        }
        for (const auto& pk : pots) {
            std::vector<double> g_s(n), g_v(n);
            kernels::pot_grad(u.data(), A.data(), g_s.data(), n, pk, Backend::scalar);
            kernels::pot_grad(u.data(), A.data(), g_v.data(), n, pk, simd);
            CHECK(bitwise_equal(g_s, g_v));
        }

        std::vector<double> fy_prev = random_vec(rng, n), potg = random_vec(rng, n);
        std::vector<double> div_s(n), div_v(n);
        kernels::divergence_row(dx_s.data(), 0.25, dy_s.data(), fy_prev.data(), potg.data(), 10.0,
                                16.0, 0.00625, div_s.data(), n, Backend::scalar);
        kernels::divergence_row(dx_s.data(), 0.25, dy_s.data(), fy_prev.data(), potg.data(), 10.0,
                                16.0, 0.00625, div_v.data(), n, simd);
        CHECK(bitwise_equal(div_s, div_v));

        std::vector<double> step_s(n), step_v(n);
        kernels::vstep_clamped(u.data(), up.data(), -0.37, -1.0, 1.0, true, step_s.data(), n,
                               Backend::scalar);
        kernels::vstep_clamped(u.data(), up.data(), -0.37, -1.0, 1.0, true, step_v.data(), n, simd);
        CHECK(bitwise_equal(step_s, step_v));

        std::vector<double> y_s = up, y_v = up;
        kernels::vaxpy(0.731, u.data(), y_s.data(), n, Backend::scalar);
        kernels::vaxpy(0.731, u.data(), y_v.data(), n, simd);
        CHECK(bitwise_equal(y_s, y_v));

        // max-type reductions are exactly associative, so bitwise too
        CHECK(kernels::vmax_abs(u.data(), n, Backend::scalar) ==
              kernels::vmax_abs(u.data(), n, simd));
        CHECK(kernels::max_g2(dx_s.data(), dy_s.data(), n, Backend::scalar) ==
              kernels::max_g2(dx_s.data(), dy_s.data(), n, simd));
        CHECK(kernels::pg_max(u.data(), up.data(), -1.0, 1.0, true, n, Backend::scalar) ==
              kernels::pg_max(u.data(), up.data(), -1.0, 1.0, true, n, simd));
    }
}

TEST_CASE("SIMD sum reductions agree with scalar to rounding") {
    const Backend simd = kernels::best_backend();
    std::mt19937_64 rng(999);
    const auto trunc = kernels::NfKernel::from(orlicz::build_truncated(1.0));
    const auto glpot = pot::build_potential(pot::PotFamily::ginzburg_landau, -1.0, 1.0);
    const auto glk = kernels::PotKernel::from(glpot);

    for (int n : {5, 64, 1001}) {
        const auto a = random_vec(rng, n), b = random_vec(rng, n);
        const auto A = random_vec(rng, n, 0.5, 2.0);
        const double tol = 1e-13;
        const auto rel = [](double x, double y) {
            return std::fabs(x - y) / std::max({1.0, std::fabs(x), std::fabs(y)});
        };
        CHECK(rel(kernels::vsum(a.data(), n, Backend::scalar), kernels::vsum(a.data(), n, simd)) <
              tol);
        CHECK(rel(kernels::vdot(a.data(), b.data(), n, Backend::scalar),
                  kernels::vdot(a.data(), b.data(), n, simd)) < tol);
        CHECK(rel(kernels::phi_sum(a.data(), b.data(), n, trunc, Backend::scalar),
                  kernels::phi_sum(a.data(), b.data(), n, trunc, simd)) < tol);
        CHECK(rel(kernels::pot_sum(a.data(), A.data(), n, glk, Backend::scalar),
                  kernels::pot_sum(a.data(), A.data(), n, glk, simd)) < tol);
    }
}

TEST_CASE("kernel reference evaluators match the N-function closed forms") {
    const auto nf = orlicz::build_truncated(2.0);
    auto k = kernels::NfKernel::from(nf);
    k.generic = &nf;
    for (double t : {0.0, 0.3, 1.0, std::sqrt(2.0), 1.6, std::sqrt(3.0), 2.5, 10.0}) {
        CHECK(k.Phi_of_g2(t * t) == nf.Phi(t));
        CHECK(k.phi_of_g2(t * t) == nf.phi(t));
    }
    const auto p = orlicz::build_power(2.5);
    auto kp = kernels::NfKernel::from(p);
    kp.generic = &p;
    for (double t : {0.1, 0.9, 3.7}) {
        CHECK(kp.Phi_of_g2(t * t) == doctest::Approx(p.Phi(t)).epsilon(1e-15));
        CHECK(kp.phi_of_g2(t * t) == doctest::Approx(p.phi(t)).epsilon(1e-15));
    }
}

TEST_CASE("flux vanishes exactly at zero gradient") {
    const auto nf = kernels::NfKernel::from(orlicz::build_truncated(1.0));
    const auto p15 = orlicz::build_power(1.5);
    auto k15 = kernels::NfKernel::from(p15);
    k15.generic = &p15;
    std::vector<double> dx(8, 0.0), dy(8, 0.0), fx(8, -1.0), fy(8, -1.0);
    for (const Backend be : {Backend::scalar, kernels::best_backend()}) {
        kernels::flux(dx.data(), dy.data(), fx.data(), fy.data(), 8, nf, be);
        for (double v : fx) CHECK(v == 0.0);
        kernels::flux(dx.data(), dy.data(), fx.data(), fy.data(), 8, k15, be);
        for (double v : fy) CHECK(v == 0.0);  // p < 2: needs the guard, phi(0) is infinite
    }
}
