#include "hyreach/oracle.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "hyreach/errors.hpp"

namespace hyreach {

ToyAutonomy toy_autonomy(double soc0, double fuel0, const VehicleParams& p) {
    if (!(p.a_x > p.u_max))
        throw ConfigError("closed-form autonomy requires a_x > u_max");
    if (soc0 < 0 || fuel0 < 0)
        throw ConfigError("closed-form autonomy requires nonnegative initial energy");
    ToyAutonomy out;
    out.battery_limited = soc0 * (p.a_y + p.u_max) <= fuel0 * (p.a_x - p.u_max);
    double burn = p.a_y + p.u_max;
    out.t_star_s = burn > 0 ? fuel0 / burn : std::numeric_limits<double>::infinity();
    out.autonomy_s = out.battery_limited ? soc0 / (p.a_x - p.u_max)
                                         : (soc0 + p.u_max * out.t_star_s) / p.a_x;
    return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One admissible discrete history: which nodes switch, and the mode driving
// each link (mode[t] drives link t+1; mode[k] is the final mode).
struct History {
    std::uint32_t switch_mask = 0;
    std::vector<Mode> mode;  // size k+1
};

// Backward mode-chain expansion for one switch schedule. Generic over the
// model's switch sets; branches if several (pre-mode, command) pairs reach the
// post-switch mode (the on/off toggle never branches).
void expand_modes(const HybridSystemModel& model, std::uint32_t mask, int k, Mode q_final,
                  std::vector<History>& out) {
    std::vector<Mode> chain(k + 1);
    chain[k] = q_final;
    // stack of (position, candidate pre-mode list index) replaced by recursion
    struct Rec {
        const HybridSystemModel& model;
        std::uint32_t mask;
        std::vector<Mode>& chain;
        std::vector<History>& out;
        int k;
        void go(int theta) {
            if (theta == 0) {
                out.push_back(History{mask, chain});
                return;
            }
            if (mask & (1u << theta)) {
                for (Mode m = 0; m < 2; ++m) {
                    for (Mode w : model.switch_set(m)) {
                        if (model.switch_mode(w, m) != chain[theta]) continue;
                        chain[theta - 1] = m;
                        go(theta - 1);
                    }
                }
            } else {
                chain[theta - 1] = chain[theta];
                go(theta - 1);
            }
        }
    } rec{model, mask, chain, out, k};
    rec.go(k);
}

std::vector<History> admissible_histories(const EnumerationInstance& inst, Mode q, double p,
                                          int k) {
    const DrivingProfile& prof = *inst.profile;
    const double delta = inst.model->lag_s();
    std::vector<History> out;
    if (k > 20) throw BudgetExceededError("enumeration limited to 20 links");
    for (std::uint32_t mask = 0; mask < (1u << (k + 1)); mask += 2) {  // node 0 never switches
        // final-lock match
        int last = 0;
        for (int t = k; t >= 1; --t)
            if (mask & (1u << t)) { last = t; break; }
        if (p == 0.0) {
            if (last != k || k == 0) continue;
        } else if (last == 0) {
            if (!(p >= prof.time_at(k))) continue;  // free departure lock
        } else {
            if (last == k) continue;
            if (prof.time_at(k) - prof.time_at(last) != p) continue;
        }
        // dwell gaps between consecutive switches
        bool ok = true;
        int prev = -1;
        for (int t = 1; t <= k && ok; ++t) {
            if (!(mask & (1u << t))) continue;
            if (prev > 0 && prof.time_at(t) - prof.time_at(prev) < delta) ok = false;
            prev = t;
        }
        if (!ok) continue;
        expand_modes(*inst.model, mask, k, q, out);
    }
    return out;
}

double enumerate_impl(const EnumerationInstance& inst, const EnergyState& x, Mode q, double p,
                      int k, bool state_constrained) {
    if (!inst.model || !inst.profile || !inst.x0 || !inst.box)
        throw ConfigError("enumeration instance is incomplete");
    if (k < 0 || k > inst.profile->stage_count())
        throw ConfigError("stage " + std::to_string(k) + " outside the profile");
    if (p < 0) throw ConfigError("lock value must be >= 0");

    if (k == 0) {
        double obs = inst.box->value(x.soc, x.fuel);
        double tgt = inst.x0->value(x.soc, x.fuel);
        if (state_constrained) return obs <= 0 ? tgt : kInf;
        return std::max(tgt, obs);
    }

    std::vector<History> histories = admissible_histories(inst, q, p, k);

    // control-set cache and job sizing
    std::vector<double> uset[2] = {inst.model->control_set(0), inst.model->control_set(1)};
    std::uint64_t total = 0;
    for (const History& h : histories) {
        std::uint64_t n = 1;
        for (int t = 1; t <= k; ++t) {
            n *= uset[h.mode[t - 1]].size();
            if (n > inst.budget) break;
        }
        total += n;
        if (total > inst.budget)
            throw BudgetExceededError("enumeration would visit more than " +
                                      std::to_string(inst.budget) +
                                      " trajectories; refusing (raise the budget explicitly)");
    }

    double best = kInf;
#pragma omp parallel for reduction(min : best) schedule(dynamic)
    for (std::size_t hi = 0; hi < histories.size(); ++hi) {
        const History& h = histories[hi];
        std::vector<std::size_t> pick(k, 0);  // odometer over control choices
        std::vector<EnergyState> z(k + 1);
        while (true) {
            z[k] = x;
            for (int t = k; t >= 1; --t)
                z[t - 1] = inst.model->predecessor(inst.profile->link(t).source_index, z[t],
                                                   uset[h.mode[t - 1]][pick[t - 1]],
                                                   h.mode[t - 1], inst.profile->link(t).dt_s());
            double obs = -kInf;
            for (int t = 0; t <= k; ++t)
                obs = std::max(obs, inst.box->value(z[t].soc, z[t].fuel));
            double tgt = inst.x0->value(z[0].soc, z[0].fuel);
            double J;
            if (state_constrained)
                J = obs <= 0 ? tgt : kInf;
            else
                J = std::max(tgt, obs);
            if (J < best) best = J;
            // advance the odometer
            int t = 0;
            while (t < k && ++pick[t] == uset[h.mode[t]].size()) pick[t++] = 0;
            if (t == k) break;
        }
    }
    return best;
}

}  // namespace

double enumerate_value(const EnumerationInstance& inst, const EnergyState& x, Mode q, double p,
                       int k) {
    return enumerate_impl(inst, x, q, p, k, false);
}

double enumerate_state_constrained(const EnumerationInstance& inst, const EnergyState& x,
                                   Mode q, double p, int k) {
    return enumerate_impl(inst, x, q, p, k, true);
}

}  // namespace hyreach
