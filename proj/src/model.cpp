#include "hyreach/model.hpp"

#include <algorithm>

#include "hyreach/errors.hpp"

namespace hyreach {

std::vector<std::string> VehicleParams::validate() const {
    if (!(a_x > 0)) throw ConfigError("a_x must be > 0");
    if (a_y < 0) throw ConfigError("a_y must be >= 0");
    if (u_max < 0) throw ConfigError("u_max must be >= 0");
    if (n_u < 1) throw ConfigError("n_u must be >= 1");
    if (!(delta_s > 0)) throw ConfigError("delta_s must be > 0");
    if (!(tank_capacity_l > 0)) throw ConfigError("tank_capacity_l must be > 0");
    if (fuel_price_eur_per_l < 0) throw ConfigError("fuel_price_eur_per_l must be >= 0");
    std::vector<std::string> warnings;
    if (a_x <= u_max)
        warnings.push_back("a_x <= u_max: the engine can out-charge the battery drain; "
                           "closed-form autonomy formulas assume a_x > u_max");
    return warnings;
}

std::vector<double> HybridSystemModel::control_set(Mode q) const {
    if (q == 0) return {0.0};
    int n = params_.n_u;
    if (n == 1) return {0.0};
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i)
        u[i] = params_.u_max * static_cast<double>(i) / (n - 1);
    u.front() = 0.0;
    u.back() = params_.u_max;  // keep the endpoints exact
    return u;
}

std::vector<Mode> HybridSystemModel::switch_set(Mode q) const { return {1 - q}; }

Mode HybridSystemModel::switch_mode(Mode w, Mode q) const {
    auto ws = switch_set(q);
    if (std::find(ws.begin(), ws.end(), w) == ws.end())
        throw ConfigError("switch command " + std::to_string(w) +
                          " is not admissible from mode " + std::to_string(q));
    return w;  // the command designates the new mode
}

EnergyState HybridSystemModel::step(int link, const EnergyState& y, double u, Mode q,
                                    double dt_s) const {
    auto f = drift(link, u, q);
    return {y.soc + dt_s * f[0], y.fuel + dt_s * f[1]};
}

EnergyState HybridSystemModel::predecessor(int link, const EnergyState& y, double u, Mode q,
                                           double dt_s) const {
    auto f = drift(link, u, q);
    return {y.soc - dt_s * f[0], y.fuel - dt_s * f[1]};
}

namespace {

class ToyVehicle final : public HybridSystemModel {
  public:
    using HybridSystemModel::HybridSystemModel;
    std::array<double, 2> drift(int /*link*/, double u, Mode q) const override {
        const VehicleParams& p = params();
        return {-p.a_x + q * u, q == 1 ? -(p.a_y + u) : 0.0};
    }
};

class ParametricVehicle final : public HybridSystemModel {
  public:
    ParametricVehicle(VehicleParams p, ParametricParams pp)
        : HybridSystemModel(std::move(p)), pp_(std::move(pp)) {
        if (!(pp_.conv_soc > 0) || !(pp_.conv_fuel > 0))
            throw ConfigError("conversion factors must be > 0");
        if (pp_.demand_per_link.empty())
            throw ConfigError("the tabulated vehicle needs a demand_per_link table");
    }
    std::array<double, 2> drift(int link, double u, Mode q) const override {
        if (link < 1 || link > static_cast<int>(pp_.demand_per_link.size()))
            throw ConfigError("power-demand table has no entry for route link " +
                              std::to_string(link));
        double demand = pp_.demand_per_link[link - 1];
        return {pp_.conv_soc * (-demand + q * u),
                pp_.conv_fuel * (q == 1 ? -(params().a_y + u) : 0.0)};
    }

  private:
    ParametricParams pp_;
};

class EvVariant final : public HybridSystemModel {
  public:
    explicit EvVariant(const HybridSystemModel& base)
        : HybridSystemModel(base.params()), base_(&base) {}
    std::array<double, 2> drift(int link, double /*u*/, Mode /*q*/) const override {
        return base_->drift(link, 0.0, 0);
    }
    std::vector<double> control_set(Mode) const override { return {0.0}; }
    std::vector<Mode> switch_set(Mode) const override { return {}; }

  private:
    const HybridSystemModel* base_;
};

}  // namespace

std::unique_ptr<HybridSystemModel> toy_vehicle(const VehicleParams& p) {
    return std::make_unique<ToyVehicle>(p);
}

std::unique_ptr<HybridSystemModel> parametric_vehicle(const VehicleParams& p,
                                                      ParametricParams pp) {
    return std::make_unique<ParametricVehicle>(p, std::move(pp));
}

std::unique_ptr<HybridSystemModel> ev_variant(const HybridSystemModel& base) {
    return std::make_unique<EvVariant>(base);
}

}  // namespace hyreach
