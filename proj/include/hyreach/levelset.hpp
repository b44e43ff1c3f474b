#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hyreach {

// Initial set X0: closed Euclidean ball. value() is the signed distance
// (negative inside); only the sign carries meaning downstream.
struct BallSet {
    std::array<double, 2> center{0.5, 0.5};
    double radius = 0.05;

    double value(double x1, double x2) const;
};

// State constraint K: axis-aligned box, max-norm signed distance (negative
// inside, zero on the boundary). Defaults to the normalized energy box [0,1]^2.
struct BoxSet {
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};

    double value(double x1, double x2) const;
    bool contains(double x1, double x2, double inflate = 0.0) const {
        return value(x1, x2) <= inflate;
    }
};

struct GridSpec {
    double dx = 0.05;                // spacing of the square energy grid
    double dp = 0.0;                 // lock spacing; <= 0 picks delta/2
    double domain_lo = -0.2;         // energy domain [lo, hi]^2
    double domain_hi = 1.2;
    std::array<double, 2> x0_center{0.5, 0.5};
    double x0_radius = 0.05;
    std::vector<double> p_nodes;     // explicit lock nodes (tests); overrides dp
};

// Fractional position on one axis: value = (1-w)*node[i0] + w*node[i0+1].
struct AxisLoc {
    int i0 = 0;
    double w = 0.0;
};

// Discretization of the hybrid state space: a uniform square grid on the energy
// plane, the two engine modes, and a short ladder of lock values
// {0, dp, 2*dp, ...} capped at min(horizon, delta + 2*dp). Solvers require at
// least one lock node >= delta (checked here, at construction).
class StateGrid {
  public:
    StateGrid(const GridSpec& spec, double delta_s, double horizon_s);

    static constexpr int nq = 2;
    int nx() const { return nx_; }
    int np() const { return static_cast<int>(p_nodes_.size()); }
    double dx() const { return dx_; }
    double x(int i) const { return x_lo_ + i * dx_; }
    double p(int ip) const { return p_nodes_[ip]; }
    const std::vector<double>& p_nodes() const { return p_nodes_; }
    double p_max() const { return p_nodes_.back(); }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x(nx_ - 1); }

    std::size_t nodes_per_layer() const {
        return static_cast<std::size_t>(nx_) * nx_ * nq * p_nodes_.size();
    }
    std::size_t index(int i1, int i2, int q, int ip) const {
        return ((static_cast<std::size_t>(i1) * nx_ + i2) * nq + q) * p_nodes_.size() + ip;
    }

    // Clamped locate: out-of-range coordinates saturate at the boundary nodes.
    AxisLoc locate_x(double z) const;
    AxisLoc locate_p(double z) const;

    // Trilinear (x1, x2, p) interpolation of one stage layer at fixed mode q.
    double interp(const double* layer, double z1, double z2, int q, double zp) const;

  private:
    StateGrid() = default;
    friend StateGrid make_raw_grid(double x_lo, double dx, int nx, std::vector<double> p_nodes);

    double x_lo_ = 0, dx_ = 0;
    int nx_ = 0;
    std::vector<double> p_nodes_;
};

// Bare-axes constructor for tests and for reloading dumped fields.
StateGrid make_raw_grid(double x_lo, double dx, int nx, std::vector<double> p_nodes);

}  // namespace hyreach
