#pragma once

// Coefficient fields A(eps*x, y) on the strip.  All built-ins are even and
// 1-periodic in y.  Class geometry:
//   1  x-periodic with a positive lower bound
//   2  below an x-periodic limit field, approaching it as |x| -> inf
//   3  a well of low coefficient near x = 0, liminf A_inf at infinity,
//      evaluated with the eps-compressed x (the (PDE) scaling)
//   4  nonnegative, even in x, possibly vanishing near x = 0, uniformly
//      positive for |x| >= K

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hetstrip::coeff {

struct CoefficientField {
    int class_tag = 1;
    std::string name;
    double eps = 1.0;
    double A0 = 0.0;    // classes 1-3: positive lower bound
    double Ainf = 0.0;  // class 3
    double K = 0.0;     // class 4
    std::function<double(double, double)> base;          // unscaled A(x, y)
    std::shared_ptr<const CoefficientField> periodic_limit;  // class 2: A_p

    double eval(double x, double y) const { return base(eps * x, y); }
};

struct CoeffParams {
    std::string name;
    std::map<std::string, double> params;
    double eps = 1.0;
};

// Built-ins by class:
//   1: "constant" {value}
//      "periodic-cells" {base, amp}: base + amp*sin^2(pi x)*sin^2(pi y)
//   2: "asymptotic-below" {base, amp, gap}: periodic-cells minus
//      gap*exp(-x^2)*(2+cos(2 pi y))/3 (strictly below its periodic limit)
//   3: "gauss-well" {a0, ainf, ywiggle}: ainf - (ainf-a0)*exp(-x^2)
//      + ywiggle*(1-exp(-x^2))*(1-cos(2 pi y))/2, requires a0 < ainf
//   4: "vanishing-origin" {}: min(1, x^2)*(1 + cos(2 pi y)/2), K = 1
CoefficientField build_coefficient(int class_tag, const CoeffParams& p);

struct ClassCheckEntry {
    std::string name;
    double residual = 0.0;  // identity mismatch, or margin for inequalities
    bool pass = false;
};

struct ClassReport {
    std::vector<ClassCheckEntry> entries;
    bool pass = false;  // all identities < 1e-10 and strict inequalities hold
};

struct SamplingSpec {
    double xmin = -3.0, xmax = 3.0;
    int nx = 601, ny = 101;
};

// Residual table for (A2), (A3) and the class-specific requirements,
// evaluated on the unscaled field.  The grid must cover >= 3 x-periods.
ClassReport class_check(const CoefficientField& A, const SamplingSpec& grid = {});

}  // namespace hetstrip::coeff
