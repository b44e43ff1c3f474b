#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace hyreach {

using Mode = int;  // 0 = engine off (pure electric), 1 = range extender on

struct EnergyState {
    double soc = 0.0;   // normalized battery state of charge
    double fuel = 0.0;  // normalized tank level

    friend bool operator==(const EnergyState&, const EnergyState&) = default;
};

struct VehicleParams {
    double a_x = 0.10;    // battery drain rate while driving, 1/s
    double a_y = 0.15;    // engine base fuel rate when on, 1/s
    double u_max = 0.07;  // max engine recharge rate, 1/s
    double delta_s = 1.0; // minimum dwell time between engine switches, s
    int n_u = 8;          // samples of [0, u_max] for the engine-on control set
    double tank_capacity_l = 6.0;
    double fuel_price_eur_per_l = 1.5;

    // Throws ConfigError on hard errors; returns soft warnings
    // (e.g. a_x <= u_max voids the closed-form autonomy assumptions).
    std::vector<std::string> validate() const;
};

// Two-source powertrain with engine on/off switching. Continuous control u is
// the engine recharge rate (only meaningful with the engine on); the switching
// lag delta_s gates how often the mode may change.
//
// drift() is the depletion rate d(soc, fuel)/dt — negative components while
// driving. step() advances one link forward in time (energy decreases);
// predecessor() is its exact inverse and is what the backward induction looks
// up. Both default to state-independent integration of drift(); models with
// special semantics (e.g. clamped test fixtures) may override them.
class HybridSystemModel {
  public:
    explicit HybridSystemModel(VehicleParams p) : params_(std::move(p)) {}
    virtual ~HybridSystemModel() = default;

    const VehicleParams& params() const { return params_; }
    double lag_s() const { return params_.delta_s; }

    // Depletion rate on route link `link` (1-based source index).
    virtual std::array<double, 2> drift(int link, double u, Mode q) const = 0;

    // U(q): engine-off admits only u=0; engine-on admits n_u evenly spaced
    // samples of [0, u_max] including both endpoints (ascending order).
    virtual std::vector<double> control_set(Mode q) const;

    // W(q): admissible new modes when switching out of q. Toggle by default.
    virtual std::vector<Mode> switch_set(Mode q) const;

    // g(w, q): the mode adopted when command w is applied in mode q.
    virtual Mode switch_mode(Mode w, Mode q) const;

    virtual EnergyState step(int link, const EnergyState& y, double u, Mode q,
                             double dt_s) const;
    virtual EnergyState predecessor(int link, const EnergyState& y, double u, Mode q,
                                    double dt_s) const;

  private:
    VehicleParams params_;
};

// Constant-rate vehicle: drift (-a_x + q*u, -q*(a_y + u)) on every link.
std::unique_ptr<HybridSystemModel> toy_vehicle(const VehicleParams& p);

// Per-link power-demand table (1-based source link index) with unit-conversion
// factors; reduces exactly to the toy model when every demand entry equals a_x
// and both factors are 1.
struct ParametricParams {
    std::vector<double> demand_per_link;
    double conv_soc = 1.0;
    double conv_fuel = 1.0;
};
std::unique_ptr<HybridSystemModel> parametric_vehicle(const VehicleParams& p,
                                                      ParametricParams pp);

// Engine locked off: empty switch sets, U(q) = {0}, drift taken from the base
// model at (u=0, q=0). Used for the pure-electric baseline solve. The base
// model must outlive the returned wrapper.
std::unique_ptr<HybridSystemModel> ev_variant(const HybridSystemModel& base);

}  // namespace hyreach
