#include "hyreach/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hyreach/errors.hpp"
#include "hyreach/util.hpp"

namespace hyreach {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<HybridPoint> pick_target(const ValueField& field, int k) {
    const StateGrid& g = field.grid();
    std::optional<HybridPoint> best;
    double best_v = 0.0;
    bool best_p0 = false;
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2)
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < g.np(); ++ip) {
                    double v = field.value(k, i1, i2, q, ip);
                    if (v > 0.0) continue;
                    bool p0 = !(g.p(ip) > 0.0);
                    // any p>0 candidate beats every p==0 candidate
                    bool better = !best || (best_p0 && !p0) ||
                                  (best_p0 == p0 && v < best_v);
                    if (better) {
                        best = HybridPoint{{g.x(i1), g.x(i2)}, q, g.p(ip)};
                        best_v = v;
                        best_p0 = p0;
                    }
                }
    return best;
}

HybridTrajectory synthesize(const ValueField& field, const HybridSystemModel& model,
                            const DrivingProfile& profile, const BoxSet& box,
                            const HybridPoint& target, int kappa, const SynthOptions& opts) {
    const StateGrid& g = field.grid();
    if (kappa < 0 || kappa > field.last_stage() || kappa > profile.stage_count())
        throw ConfigError("synthesis stage " + std::to_string(kappa) +
                          " outside the solved range");
    double slack = opts.value_slack > 0 ? opts.value_slack : g.dx();

    double v_target = field.interp(kappa, target.y.soc, target.y.fuel, target.q, target.p);
    if (v_target > 0.0)
        throw UnreachableTargetError("target state has value " + format_roundtrip(v_target) +
                                     " > 0 at stage " + std::to_string(kappa));

    EnergyState y = target.y;
    Mode q = target.q;
    double lock = target.p;

    std::vector<EnergyState> y_rev{y};  // stages kappa..0
    std::vector<Mode> q_rev{q};
    std::vector<double> u_rev;                 // controls for links kappa..1
    std::vector<SwitchDecision> switches_rev;  // collected newest-node first

    for (int k = kappa; k >= 1; --k) {
        // A lock of exactly zero records the switch adopted at this node and
        // re-enters the layer at the mode the switch came from.
        if (lock == 0.0 && !model.switch_set(q).empty()) {
            double best = kInf;
            Mode best_from = q;
            double best_p = 0.0;
            for (Mode w : model.switch_set(q)) {
                Mode q_from = model.switch_mode(w, q);
                for (int ip = 0; ip < g.np(); ++ip) {
                    if (g.p(ip) < model.lag_s() - 1e-12) continue;
                    double v = field.interp(k, y.soc, y.fuel, q_from, g.p(ip));
                    if (v < best) {
                        best = v;
                        best_from = q_from;
                        best_p = g.p(ip);
                    }
                }
            }
            if (best > slack)
                throw ReconstructionError(
                    k, "no dwell-admissible switch source at stage " + std::to_string(k) +
                           " (best value " + format_roundtrip(best) + ")");
            // the command that, applied in the source mode, adopts q
            Mode w_fwd = -1;
            for (Mode w : model.switch_set(best_from))
                if (model.switch_mode(w, best_from) == q) {
                    w_fwd = w;
                    break;
                }
            if (w_fwd < 0)
                throw ReconstructionError(k, "switch into mode " + std::to_string(q) +
                                                 " has no forward command at stage " +
                                                 std::to_string(k));
            switches_rev.push_back(SwitchDecision{k, w_fwd});
            q = best_from;
            lock = best_p;
            q_rev.back() = q;  // the node's pre-switch mode drives the incoming link
        }

        double dt = profile.link(k).dt_s();
        int src = profile.link(k).source_index;
        double p_prev = std::max(0.0, lock - dt);
        // At the ladder top the lock may also stay saturated: the last switch
        // can lie further back than the ladder spans. Mirror the solver's
        // absorbing top node and follow whichever branch carries the value.
        bool saturated = lock >= g.p(g.np() - 1);
        double best = kInf;
        double best_u = 0.0;
        bool best_stay = false;
        EnergyState best_y{};
        for (double u : model.control_set(q)) {
            EnergyState pre = model.predecessor(src, y, u, q, dt);
            double v = field.interp(k - 1, pre.soc, pre.fuel, q, p_prev);
            if (v < best) {
                best = v;
                best_u = u;
                best_y = pre;
                best_stay = false;
            }
            if (saturated) {
                double vs = field.interp(k - 1, pre.soc, pre.fuel, q, lock);
                if (vs < best) {
                    best = vs;
                    best_u = u;
                    best_y = pre;
                    best_stay = true;
                }
            }
        }
        if (best > slack)
            throw ReconstructionError(k, "transport into stage " + std::to_string(k) +
                                             " lost the reachable set (best value " +
                                             format_roundtrip(best) + ")");
        y = best_y;
        if (!best_stay) lock = p_prev;
        u_rev.push_back(best_u);
        y_rev.push_back(y);
        q_rev.push_back(q);
    }

    double v0 = field.interp(0, y.soc, y.fuel, q, lock);
    if (v0 > slack)
        throw ReconstructionError(0, "departure state missed the initial set (value " +
                                         format_roundtrip(v0) + ")");

    HybridTrajectory traj;
    traj.target_stage = kappa;
    traj.control.initial_mode = q;
    traj.control.u.assign(u_rev.rbegin(), u_rev.rend());
    std::vector<SwitchDecision> all_switches(switches_rev.rbegin(), switches_rev.rend());
    for (const SwitchDecision& s : all_switches)
        if (s.node < kappa) traj.control.switches.push_back(s);  // one at kappa drives nothing

    DrivingProfile head = profile.head(kappa);
    std::vector<int> nodes;
    for (const SwitchDecision& s : all_switches) nodes.push_back(s.node);
    std::vector<double> locks = lock_trajectory(head, nodes, model.lag_s());

    traj.points.resize(kappa + 1);
    std::size_t next_switch = 0;
    for (int k = 0; k <= kappa; ++k) {
        TrajectoryPoint& pt = traj.points[k];
        pt.stage = k;
        pt.time_s = profile.time_at(k);
        pt.y = y_rev[kappa - k];
        pt.q = q_rev[kappa - k];
        pt.lock_s = locks[k];
        pt.u = k == 0 ? 0.0 : traj.control.u[k - 1];
        pt.switched = next_switch < nodes.size() && nodes[next_switch] == k;
        if (pt.switched) {
            ++next_switch;
            // the stored mode at a switch node is the pre-switch one; show the adopted mode
            pt.q = k == kappa ? target.q : q_rev[kappa - k - 1];
        }
        pt.in_box = box.contains(pt.y.soc, pt.y.fuel);
    }
    return traj;
}

ReplayResult forward_simulate(const HybridSystemModel& model, const DrivingProfile& profile,
                              const HybridControl& ctrl, const EnergyState& y0,
                              const BoxSet& box, double box_inflate) {
    ReplayResult r;
    r.admissibility = check_admissible(model, profile, ctrl);
    const int K = profile.stage_count();
    std::vector<int> nodes;
    for (const SwitchDecision& s : ctrl.switches) nodes.push_back(s.node);
    r.modes = mode_trajectory(model, K, ctrl);
    r.locks = lock_trajectory(profile, nodes, model.lag_s());
    r.states.resize(K + 1);
    r.states[0] = y0;
    r.stays_in_box = box.contains(y0.soc, y0.fuel, box_inflate);
    for (int k = 1; k <= K; ++k) {
        const ProfileLink& link = profile.link(k);
        double u = k - 1 < static_cast<int>(ctrl.u.size()) ? ctrl.u[k - 1] : 0.0;
        r.states[k] =
            model.step(link.source_index, r.states[k - 1], u, r.modes[k - 1], link.dt_s());
        if (!box.contains(r.states[k].soc, r.states[k].fuel, box_inflate))
            r.stays_in_box = false;
    }
    return r;
}

void write_trajectory_csv(const HybridTrajectory& traj, std::ostream& out) {
    out << "stage,time_s,soc,fuel,q,p,u,switched\n";
    for (const TrajectoryPoint& pt : traj.points)
        out << pt.stage << ',' << format_roundtrip(pt.time_s) << ','
            << format_roundtrip(pt.y.soc) << ',' << format_roundtrip(pt.y.fuel) << ',' << pt.q
            << ',' << format_roundtrip(pt.lock_s) << ',' << format_roundtrip(pt.u) << ','
            << (pt.switched ? 1 : 0) << '\n';
}

}  // namespace hyreach
