#include "hetstrip/strip/field.hpp"

#include <algorithm>
#include <cmath>

namespace hetstrip::strip {

bool Field::box_feasible(double lo, double hi) const {
    for (double x : v)
        if (!(x >= lo && x <= hi)) return false;
    return true;
}

bool Field::finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Field initial_ramp(const Grid& g, double alpha, double beta) {
    if (!(alpha < beta)) throw std::invalid_argument("initial_ramp: requires alpha < beta");
    if (!(g.T > std::max(std::fabs(alpha), std::fabs(beta))))
        throw std::invalid_argument("initial_ramp: window too small, the ramp cannot reach the wells");
    Field f(g);
    for (int i = 0; i < g.nx; ++i) {
        const double u = std::min(beta, std::max(alpha, g.x(i)));
        for (int j = 0; j < g.ny; ++j) f.at(i, j) = u;
    }
    return f;
}

Field translate(const Field& f, int k) {
    const Grid& g = f.grid;
    const double cpu = g.nx / (2.0 * g.T);  // cells per x-unit
    const double rounded = std::round(cpu);
    if (std::fabs(cpu - rounded) > 1e-9 * cpu)
        throw std::invalid_argument("translate: one x-unit is not a whole number of cells");
    const long shift = static_cast<long>(k) * static_cast<long>(rounded);
    if ((shift < 0 ? -shift : shift) >= g.nx)
        throw std::invalid_argument("translate: shift exhausts the window");
    Field out(g);
    for (int j = 0; j < g.ny; ++j) {
        const double* src = f.row(j);
        double* dst = out.row(j);
        for (int i = 0; i < g.nx; ++i) {
            const long s = i + shift;
            if (s < 0)
                dst[i] = g.clamp_left;
            else if (s >= g.nx)
                dst[i] = g.clamp_right;
            else
                dst[i] = src[s];
        }
    }
    return out;
}

Field resample_x(const Field& f, const Grid& to) {
    if (to.ny != f.grid.ny) throw std::invalid_argument("resample_x: ny must match");
    const Grid& from = f.grid;
    Field out(to);
    for (int i = 0; i < to.nx; ++i) {
        const double x = to.x(i);
        // fractional source index
        const double s = (x + from.T) / from.hx() - 0.5;
        for (int j = 0; j < to.ny; ++j) {
            double val;
            if (s <= -1.0) {
                val = from.clamp_left;
            } else if (s >= from.nx) {
                val = from.clamp_right;
            } else {
                const int i0 = static_cast<int>(std::floor(s));
                const double w = s - i0;
                const double a = (i0 < 0) ? from.clamp_left : f.at(std::min(i0, from.nx - 1), j);
                const double b = (i0 + 1 >= from.nx) ? from.clamp_right : f.at(i0 + 1, j);
                val = a + w * (b - a);
            }
            out.at(i, j) = val;
        }
    }
    return out;
}

}  // namespace hetstrip::strip
