#pragma once

// Exactly solvable micro-instances shared by the solver tests and the
// acceptance gate. Everything is dyadic (spacings, rates, durations) and the
// vehicle clamps its own dynamics to the grid domain, so every backward lookup
// lands exactly on a grid node and the induction incurs zero interpolation
// error. On such instances the solver must agree with brute-force enumeration
// to the last bit.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hyreach/dp.hpp"
#include "hyreach/levelset.hpp"
#include "hyreach/model.hpp"
#include "hyreach/oracle.hpp"
#include "hyreach/profile.hpp"

namespace hyreach::micro {

// Constant-rate vehicle whose step/predecessor maps clamp the energy state
// into [lo, hi]^2. The clamp is part of the instance definition: the same map
// drives the induction and the enumeration, keeping the transition system
// closed over the grid nodes.
class ClampedToy : public HybridSystemModel {
  public:
    ClampedToy(VehicleParams p, double lo, double hi)
        : HybridSystemModel(std::move(p)), lo_(lo), hi_(hi) {}

    std::array<double, 2> drift(int, double u, Mode q) const override {
        return {-params().a_x + q * u, q == 1 ? -(params().a_y + u) : 0.0};
    }
    EnergyState step(int link, const EnergyState& y, double u, Mode q,
                     double dt_s) const override {
        return clamp(HybridSystemModel::step(link, y, u, q, dt_s));
    }
    EnergyState predecessor(int link, const EnergyState& y, double u, Mode q,
                            double dt_s) const override {
        return clamp(HybridSystemModel::predecessor(link, y, u, q, dt_s));
    }

  private:
    EnergyState clamp(EnergyState y) const {
        y.soc = std::min(hi_, std::max(lo_, y.soc));
        y.fuel = std::min(hi_, std::max(lo_, y.fuel));
        return y;
    }
    double lo_, hi_;
};

struct MicroInstance {
    VehicleParams params;
    double dx = 0.25;
    double dt = 0.25;
    int links = 2;
    std::array<double, 2> x0_center{0.5, 0.5};
    double x0_radius = 0.25;
    BoxSet box;  // defaults to [0,1]^2 == the grid domain

    ClampedToy model() const { return ClampedToy(params, 0.0, 1.0); }
    DrivingProfile profile() const { return constant_profile(links, dt, 1.0); }
    GridSpec grid_spec() const {
        GridSpec gs;
        gs.dx = dx;
        gs.domain_lo = 0.0;
        gs.domain_hi = 1.0;
        gs.x0_center = x0_center;
        gs.x0_radius = x0_radius;
        for (int i = 0; i <= links; ++i) gs.p_nodes.push_back(i * dt);
        return gs;
    }
};

// Deterministic family of dyadic instances. Every quantity is a small integer
// multiple of the spacings, so all arithmetic below 2^53 stays exact.
inline std::vector<MicroInstance> micro_family(int count, std::uint32_t seed = 20240817) {
    std::mt19937 rng(seed);
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    std::vector<MicroInstance> out;
    while (static_cast<int>(out.size()) < count) {
        MicroInstance mi;
        mi.dx = pick(2) ? 0.25 : 0.125;
        mi.dt = pick(2) ? 0.25 : 0.5;
        mi.links = 2 + pick(2);  // 2 or 3
        double unit = mi.dx / mi.dt;
        mi.params.a_x = (1 + pick(3)) * unit;
        mi.params.a_y = pick(3) * unit;
        int m_u = pick(3);  // u_max = m_u * unit
        mi.params.u_max = m_u * unit;
        mi.params.n_u = m_u + 1;
        mi.params.delta_s = (1 + pick(2)) * mi.dt;
        int nx = static_cast<int>(1.0 / mi.dx) + 1;
        mi.x0_center = {pick(nx) * mi.dx, pick(nx) * mi.dx};
        mi.x0_radius = (1 + pick(2)) * mi.dx;
        if (pick(2)) mi.box.hi = {1.0 - mi.dx, 1.0};  // constraint tighter than the domain
        out.push_back(mi);
    }
    return out;
}

struct SolvedMicro {
    MicroInstance inst;
    ClampedToy model;
    DrivingProfile profile;
    ValueField field;
};

inline SolvedMicro solve_micro(const MicroInstance& mi) {
    ClampedToy model = mi.model();
    DrivingProfile prof = mi.profile();
    SolveSetup setup;
    setup.model = &model;
    setup.profile = &prof;
    setup.grid = mi.grid_spec();
    setup.box = mi.box;
    SolveOptions opts;
    opts.parallel = false;
    opts.stop_when_empty = false;
    ValueField field = solve(setup, opts);
    return SolvedMicro{mi, std::move(model), std::move(prof), std::move(field)};
}

}  // namespace hyreach::micro
