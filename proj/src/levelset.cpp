#include "hyreach/levelset.hpp"

#include <algorithm>
#include <cmath>

#include "hyreach/errors.hpp"

namespace hyreach {

double BallSet::value(double x1, double x2) const {
    return std::hypot(x1 - center[0], x2 - center[1]) - radius;
}

double BoxSet::value(double x1, double x2) const {
    double m1 = std::max(lo[0] - x1, x1 - hi[0]);
    double m2 = std::max(lo[1] - x2, x2 - hi[1]);
    return std::max(m1, m2);
}

StateGrid::StateGrid(const GridSpec& spec, double delta_s, double horizon_s) {
    if (!(spec.dx > 0)) throw ConfigError("grid spacing dx must be > 0");
    if (!(spec.domain_hi > spec.domain_lo))
        throw ConfigError("energy domain is empty: domain_hi must exceed domain_lo");
    if (!(delta_s > 0)) throw ConfigError("minimum dwell time delta_s must be > 0");

    x_lo_ = spec.domain_lo;
    dx_ = spec.dx;
    nx_ = static_cast<int>(std::ceil((spec.domain_hi - spec.domain_lo) / spec.dx - 1e-9)) + 1;
    if (nx_ < 2) throw ConfigError("energy grid needs at least 2 nodes per axis");

    if (!spec.p_nodes.empty()) {
        p_nodes_ = spec.p_nodes;
        if (p_nodes_.front() != 0.0)
            throw ConfigError("explicit lock grid must start at 0");
        for (std::size_t i = 1; i < p_nodes_.size(); ++i)
            if (!(p_nodes_[i] > p_nodes_[i - 1]))
                throw ConfigError("explicit lock grid must be strictly increasing");
    } else {
        double dp = spec.dp > 0 ? spec.dp : delta_s / 2.0;
        double cap = std::min(horizon_s, delta_s + 2.0 * dp);
        for (int i = 0;; ++i) {
            double v = i * dp;
            if (v > cap + 1e-12) break;
            p_nodes_.push_back(v);
        }
    }
    if (p_nodes_.empty() || p_nodes_.back() < delta_s - 1e-12)
        throw ConfigError("lock grid has no node >= the dwell time delta_s; "
                          "shrink dp or extend the route");
}

StateGrid make_raw_grid(double x_lo, double dx, int nx, std::vector<double> p_nodes) {
    StateGrid g;
    g.x_lo_ = x_lo;
    g.dx_ = dx;
    g.nx_ = nx;
    g.p_nodes_ = std::move(p_nodes);
    if (nx < 2 || !(dx > 0) || g.p_nodes_.empty())
        throw ConfigError("raw grid needs nx >= 2, dx > 0 and at least one lock node");
    return g;
}

AxisLoc StateGrid::locate_x(double z) const {
    double t = (z - x_lo_) / dx_;
    if (t <= 0) return {0, 0.0};
    if (t >= nx_ - 1) return {nx_ - 2, 1.0};
    int i = static_cast<int>(t);
    if (i > nx_ - 2) i = nx_ - 2;
    return {i, t - i};
}

AxisLoc StateGrid::locate_p(double z) const {
    int n = np();
    if (n == 1 || z <= p_nodes_.front()) return {0, 0.0};
    if (z >= p_nodes_.back()) return {n - 2, 1.0};
    int i = static_cast<int>(std::upper_bound(p_nodes_.begin(), p_nodes_.end(), z) -
                             p_nodes_.begin()) - 1;
    if (i > n - 2) i = n - 2;
    return {i, (z - p_nodes_[i]) / (p_nodes_[i + 1] - p_nodes_[i])};
}

double StateGrid::interp(const double* layer, double z1, double z2, int q, double zp) const {
    AxisLoc a = locate_x(z1), b = locate_x(z2), c = locate_p(zp);
    int c1 = std::min(c.i0 + 1, np() - 1);
    auto at = [&](int i1, int i2, int ip) { return layer[index(i1, i2, q, ip)]; };
    auto lerp = [](double v0, double v1, double w) { return (1.0 - w) * v0 + w * v1; };
    double v00 = lerp(at(a.i0, b.i0, c.i0), at(a.i0, b.i0, c1), c.w);
    double v01 = lerp(at(a.i0, b.i0 + 1, c.i0), at(a.i0, b.i0 + 1, c1), c.w);
    double v10 = lerp(at(a.i0 + 1, b.i0, c.i0), at(a.i0 + 1, b.i0, c1), c.w);
    double v11 = lerp(at(a.i0 + 1, b.i0 + 1, c.i0), at(a.i0 + 1, b.i0 + 1, c1), c.w);
    return lerp(lerp(v00, v01, b.w), lerp(v10, v11, b.w), a.w);
}

}  // namespace hyreach
