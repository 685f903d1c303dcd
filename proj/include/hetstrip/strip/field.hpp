#pragma once

// Discretization of the strip R x (0,1): a truncated window (-T,T) with nx
// cell-centered columns, ny rows periodic in y, and clamped ghost columns at
// x = -T (value clamp_left) and x = +T (value clamp_right).  Cell centers are
// computed from integers scaled once, so x(i) == -x(nx-1-i) holds bitwise.

#include <stdexcept>
#include <vector>

namespace hetstrip::strip {

struct Grid {
    double T = 20.0;
    int nx = 400;
    int ny = 16;
    double clamp_left = -1.0;   // well value at x = -T
    double clamp_right = 1.0;   // well value at x = +T

    Grid() = default;
    Grid(double T_, int nx_, int ny_, double cl, double cr) : T(T_), nx(nx_), ny(ny_), clamp_left(cl), clamp_right(cr) {
        if (!(T > 0.0)) throw std::invalid_argument("Grid: T must be > 0");
        if (nx < 2 || nx % 2 != 0) throw std::invalid_argument("Grid: nx must be even and >= 2");
        if (ny < 4) throw std::invalid_argument("Grid: ny must be >= 4");
    }

    double hx() const { return 2.0 * T / nx; }
    double hy() const { return 1.0 / ny; }
    double x(int i) const { return (2 * i + 1 - nx) * (T / nx); }
    double y(int j) const { return (j + 0.5) / ny; }

    bool same_shape(const Grid& o) const {
        return T == o.T && nx == o.nx && ny == o.ny && clamp_left == o.clamp_left &&
               clamp_right == o.clamp_right;
    }
};

struct Field {
    Grid grid;
    std::vector<double> v;  // v[j*nx + i], rows contiguous in x

    Field() = default;
    explicit Field(const Grid& g, double fill = 0.0) : grid(g), v(static_cast<size_t>(g.nx) * g.ny, fill) {}

    double& at(int i, int j) { return v[static_cast<size_t>(j) * grid.nx + i]; }
    double at(int i, int j) const { return v[static_cast<size_t>(j) * grid.nx + i]; }
    const double* row(int j) const { return v.data() + static_cast<size_t>(j) * grid.nx; }
    double* row(int j) { return v.data() + static_cast<size_t>(j) * grid.nx; }
    std::size_t size() const { return v.size(); }

    bool box_feasible(double lo, double hi) const;
    bool finite() const;
};

// u(x,y) = clamp(x, alpha, beta), constant in y; requires T > max{|a|,|b|}
// so the window reaches both wells.
Field initial_ramp(const Grid& g, double alpha, double beta);

// tau_k: shift left by k whole x-units (k*nx/(2T) cells); exposed columns are
// refilled with the well the shift uncovers.  Rejects shifts that exhaust the
// window or a window whose unit is not a whole number of cells.
Field translate(const Field& f, int k);

// Linear resample in x onto a new grid (same ny); outside the source window
// the clamp values extend.  Used by continuation warm starts.
Field resample_x(const Field& f, const Grid& to);

}  // namespace hetstrip::strip
