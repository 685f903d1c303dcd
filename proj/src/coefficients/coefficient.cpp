#include "hetstrip/coefficients/coefficient.hpp"

#include <cmath>
#include <stdexcept>

namespace hetstrip::coeff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double get(const CoeffParams& p, const std::string& key, double dflt) {
    auto it = p.params.find(key);
    return it == p.params.end() ? dflt : it->second;
}

std::function<double(double, double)> periodic_cells(double base, double amp) {
    return [base, amp](double x, double y) {
        const double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
        return base + amp * sx * sx * sy * sy;
    };
}

}  // namespace

CoefficientField build_coefficient(int class_tag, const CoeffParams& p) {
    CoefficientField A;
    A.class_tag = class_tag;
    A.name = p.name;
    A.eps = p.eps;
    if (!(A.eps > 0.0)) throw std::invalid_argument("coefficient: eps must be > 0");
    if (class_tag != 3 && p.eps != 1.0)
        throw std::invalid_argument("coefficient: eps scaling applies to class 3 only");

    switch (class_tag) {
        case 1: {
            if (p.name == "constant") {
                const double v = get(p, "value", 1.0);
                if (!(v > 0.0)) throw std::invalid_argument("coefficient: constant value must be > 0");
                A.A0 = v;
                A.base = [v](double, double) { return v; };
            } else if (p.name == "periodic-cells") {
                const double base = get(p, "base", 1.0), amp = get(p, "amp", 0.5);
                if (!(base > 0.0) || amp < 0.0)
                    throw std::invalid_argument("coefficient: periodic-cells requires base > 0, amp >= 0");
                A.A0 = base;
                A.base = periodic_cells(base, amp);
            } else {
                throw std::invalid_argument("coefficient: unknown class-1 form '" + p.name + "'");
            }
            break;
        }
        case 2: {
            if (p.name != "asymptotic-below")
                throw std::invalid_argument("coefficient: unknown class-2 form '" + p.name + "'");
            const double base = get(p, "base", 1.0), amp = get(p, "amp", 0.5), gap = get(p, "gap", 0.5);
            if (!(gap > 0.0) || !(gap < base))
                throw std::invalid_argument("coefficient: asymptotic-below requires 0 < gap < base");
            auto limit = std::make_shared<CoefficientField>();
            limit->class_tag = 1;
            limit->name = "periodic-cells";
            limit->A0 = base;
            limit->base = periodic_cells(base, amp);
            A.A0 = base - gap;
            A.periodic_limit = limit;
            auto ap = limit->base;
            A.base = [ap, gap](double x, double y) {
                return ap(x, y) - gap * std::exp(-x * x) * (2.0 + std::cos(2.0 * kPi * y)) / 3.0;
            };
            break;
        }
        case 3: {
            if (p.name != "gauss-well")
                throw std::invalid_argument("coefficient: unknown class-3 form '" + p.name + "'");
            const double a0 = get(p, "a0", 0.5), ainf = get(p, "ainf", 2.0), wig = get(p, "ywiggle", 0.0);
            if (!(a0 > 0.0) || wig < 0.0)
                throw std::invalid_argument("coefficient: gauss-well requires a0 > 0, ywiggle >= 0");
            A.A0 = a0;
            A.Ainf = ainf;
            A.base = [a0, ainf, wig](double x, double y) {
                const double e = std::exp(-x * x);
                return ainf - (ainf - a0) * e + wig * (1.0 - e) * (1.0 - std::cos(2.0 * kPi * y)) / 2.0;
            };
            // class condition: sup_y A(0, y) < A_inf
            double sup0 = 0.0;
            for (int j = 0; j <= 200; ++j) sup0 = std::max(sup0, A.base(0.0, j / 200.0));
            if (!(sup0 < ainf))
                throw std::invalid_argument("coefficient: class 3 requires sup_y A(0,y) < Ainf");
            break;
        }
        case 4: {
            if (p.name != "vanishing-origin")
                throw std::invalid_argument("coefficient: unknown class-4 form '" + p.name + "'");
            A.K = 1.0;
            A.base = [](double x, double y) {
                return std::min(1.0, x * x) * (1.0 + 0.5 * std::cos(2.0 * kPi * y));
            };
            break;
        }
        default:
            throw std::invalid_argument("coefficient: class tag must be 1..4");
    }
    return A;
}

ClassReport class_check(const CoefficientField& A, const SamplingSpec& g) {
    if (!(g.xmax - g.xmin >= 3.0))
        throw std::invalid_argument("class_check: grid must cover at least 3 x-periods");
    ClassReport rep;
    const double tol = 1e-10;
    const auto sample_max = [&](auto&& f) {
        double r = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xmin + (g.xmax - g.xmin) * i / (g.nx - 1.0);
            for (int j = 0; j < g.ny; ++j) {
                const double y = j / (g.ny - 1.0);
                r = std::max(r, f(x, y));
            }
        }
        return r;
    };
    const auto sample_min = [&](auto&& f) {
        double r = std::numeric_limits<double>::infinity();
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xmin + (g.xmax - g.xmin) * i / (g.nx - 1.0);
            for (int j = 0; j < g.ny; ++j) {
                const double y = j / (g.ny - 1.0);
                r = std::min(r, f(x, y));
            }
        }
        return r;
    };

    const auto& B = A.base;
    const double even = sample_max([&](double x, double y) { return std::fabs(B(x, y) - B(x, -y)); });
    rep.entries.push_back({"A2-y-even", even, even < tol});
    const double yper = sample_max([&](double x, double y) { return std::fabs(B(x, y) - B(x, y + 1.0)); });
    rep.entries.push_back({"A3-y-periodic", yper, yper < tol});
    const double amin = sample_min(B);
    rep.entries.push_back({"nonnegative", amin, amin >= 0.0});

    switch (A.class_tag) {
        case 1: {
            const double xper = sample_max([&](double x, double y) { return std::fabs(B(x + 1.0, y) - B(x, y)); });
            rep.entries.push_back({"class1-x-periodic", xper, xper < tol});
            rep.entries.push_back({"A1-lower-bound", amin - A.A0, amin >= A.A0 - 1e-12});
            break;
        }
        case 2: {
            const auto& P = A.periodic_limit->base;
            const double margin = sample_min([&](double x, double y) { return P(x, y) - B(x, y); });
            rep.entries.push_back({"class2-below-limit", margin, margin > 0.0});
            // |A - A_p| decreasing along the sampled x-rays toward the window edge
            bool dec = true;
            double worst = 0.0;
            for (int j = 0; j < g.ny; ++j) {
                const double y = j / (g.ny - 1.0);
                double prev = std::fabs(B(0.0, y) - P(0.0, y));
                for (int i = 1; i <= 20; ++i) {
                    const double x = g.xmax * i / 20.0;
                    const double cur = std::fabs(B(x, y) - P(x, y));
                    if (cur > prev + 1e-12) dec = false;
                    prev = cur;
                }
                worst = std::max(worst, prev);
            }
            rep.entries.push_back({"class2-gap-decreasing", worst, dec});
            rep.entries.push_back({"A1-lower-bound", amin - A.A0, amin >= A.A0 - 1e-12});
            break;
        }
        case 3: {
            double sup0 = 0.0;
            for (int j = 0; j < g.ny; ++j) sup0 = std::max(sup0, B(0.0, j / (g.ny - 1.0)));
            rep.entries.push_back({"class3-well", A.Ainf - sup0, sup0 < A.Ainf});
            rep.entries.push_back({"A1-lower-bound", amin - A.A0, amin >= A.A0 - 1e-12});
            break;
        }
        case 4: {
            const double xeven = sample_max([&](double x, double y) { return std::fabs(B(x, y) - B(-x, y)); });
            rep.entries.push_back({"class4-x-even", xeven, xeven < tol});
            double inf_out = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 200; ++i) {
                const double x = A.K + (std::max(g.xmax, A.K + 3.0) - A.K) * i / 200.0;
                for (int j = 0; j <= 50; ++j) {
                    const double y = j / 50.0;
                    inf_out = std::min(inf_out, std::min(B(x, y), B(-x, y)));
                }
            }
            rep.entries.push_back({"class4-positive-outside-K", inf_out, inf_out > 0.0});
            break;
        }
    }

    rep.pass = true;
    for (const auto& e : rep.entries) rep.pass = rep.pass && e.pass;
    return rep;
}

}  // namespace hetstrip::coeff
