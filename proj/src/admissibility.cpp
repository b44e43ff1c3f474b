#include "hyreach/admissibility.hpp"

#include <algorithm>

#include "hyreach/errors.hpp"
#include "hyreach/util.hpp"

namespace hyreach {

std::vector<double> lock_trajectory(const DrivingProfile& profile,
                                    const std::vector<int>& switch_nodes, double delta_s) {
    const int K = profile.stage_count();
    for (std::size_t j = 0; j < switch_nodes.size(); ++j) {
        if (switch_nodes[j] < 1 || switch_nodes[j] > K)
            throw ConfigError("switch node " + std::to_string(switch_nodes[j]) +
                              " outside 1.." + std::to_string(K));
        if (j > 0 && switch_nodes[j] <= switch_nodes[j - 1])
            throw ConfigError("switch nodes must be strictly increasing");
    }
    std::vector<double> pi(K + 1);
    pi[0] = delta_s;
    std::size_t next = 0;
    for (int k = 1; k <= K; ++k) {
        if (next < switch_nodes.size() && switch_nodes[next] == k) {
            pi[k] = 0.0;
            ++next;
        } else {
            pi[k] = pi[k - 1] + profile.link(k).dt_s();
        }
    }
    return pi;
}

std::vector<Mode> mode_trajectory(const HybridSystemModel& model, int stage_count,
                                  const HybridControl& ctrl) {
    std::vector<Mode> m(stage_count + 1);
    m[0] = ctrl.initial_mode;
    std::size_t next = 0;
    for (int k = 1; k <= stage_count; ++k) {
        if (next < ctrl.switches.size() && ctrl.switches[next].node == k) {
            m[k] = model.switch_mode(ctrl.switches[next].to_mode, m[k - 1]);
            ++next;
        } else {
            m[k] = m[k - 1];
        }
    }
    return m;
}

AdmissibilityReport check_admissible(const HybridSystemModel& model,
                                     const DrivingProfile& profile, const HybridControl& ctrl) {
    const int K = profile.stage_count();
    auto fail = [](std::string reason, int item) {
        return AdmissibilityReport{false, std::move(reason), item};
    };

    if (static_cast<int>(ctrl.u.size()) != K)
        return fail("control sequence has " + std::to_string(ctrl.u.size()) +
                        " entries for a " + std::to_string(K) + "-link route",
                    -1);
    if (ctrl.initial_mode != 0 && ctrl.initial_mode != 1)
        return fail("initial mode must be 0 or 1", -1);

    // Switch schedule: node range, monotonicity, command legality.
    Mode m = ctrl.initial_mode;
    std::vector<Mode> mode_after(K + 1);
    mode_after[0] = m;
    {
        int prev_node = 0;
        for (std::size_t j = 0; j < ctrl.switches.size(); ++j) {
            const SwitchDecision& s = ctrl.switches[j];
            if (s.node < 1 || s.node > K - 1)
                return fail("switch " + std::to_string(j + 1) + " at node " +
                                std::to_string(s.node) + " outside 1.." + std::to_string(K - 1),
                            static_cast<int>(j + 1));
            if (s.node <= prev_node)
                return fail("switch " + std::to_string(j + 1) + " node " +
                                std::to_string(s.node) + " does not increase past node " +
                                std::to_string(prev_node),
                            static_cast<int>(j + 1));
            prev_node = s.node;
        }
    }
    {
        std::size_t next = 0;
        for (int k = 1; k <= K; ++k) {
            if (next < ctrl.switches.size() && ctrl.switches[next].node == k) {
                const SwitchDecision& s = ctrl.switches[next];
                auto ws = model.switch_set(mode_after[k - 1]);
                if (std::find(ws.begin(), ws.end(), s.to_mode) == ws.end())
                    return fail("switch " + std::to_string(next + 1) + " at node " +
                                    std::to_string(k) + ": mode " + std::to_string(s.to_mode) +
                                    " is not reachable from mode " +
                                    std::to_string(mode_after[k - 1]),
                                static_cast<int>(next + 1));
                mode_after[k] = s.to_mode;
                ++next;
            } else {
                mode_after[k] = mode_after[k - 1];
            }
        }
    }

    // Continuous controls must be members of the sampled control set of the
    // mode driving their link (exact membership; the sets are finite).
    for (int k = 1; k <= K; ++k) {
        auto us = model.control_set(mode_after[k - 1]);
        if (std::find(us.begin(), us.end(), ctrl.u[k - 1]) == us.end())
            return fail("link " + std::to_string(k) + ": control " +
                            format_roundtrip(ctrl.u[k - 1]) + " is not in U(" +
                            std::to_string(mode_after[k - 1]) + ")",
                        k);
    }

    // Dwell gaps between consecutive switches (closed inequality, first switch
    // free). Stage times are prefix sums of link durations, so a nominally
    // exact gap can land a few ulps short; accept it with the same slack the
    // solver's dwell gate applies.
    const double delta = model.lag_s();
    for (std::size_t j = 1; j < ctrl.switches.size(); ++j) {
        double gap = profile.time_at(ctrl.switches[j].node) -
                     profile.time_at(ctrl.switches[j - 1].node);
        if (gap < delta - 1e-12)
            return fail("switch " + std::to_string(j + 1) + " at node " +
                            std::to_string(ctrl.switches[j].node) + ": only " +
                            format_roundtrip(gap) + " s since switch " + std::to_string(j) +
                            " (minimum dwell " + format_roundtrip(delta) + " s)",
                        static_cast<int>(j + 1));
    }

    return {};
}

}  // namespace hyreach
