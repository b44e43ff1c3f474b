#pragma once

#include <string>
#include <vector>

#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"

namespace hyreach {

// A mode change adopted AT route node `node`: links <= node run in the old
// mode, links > node in `to_mode`. Valid nodes are 1..K-1.
struct SwitchDecision {
    int node = 0;
    Mode to_mode = 0;

    friend bool operator==(const SwitchDecision&, const SwitchDecision&) = default;
};

// A complete open-loop hybrid control for the first u.size() links of a route.
struct HybridControl {
    Mode initial_mode = 0;
    std::vector<double> u;                 // u[t-1] drives link t
    std::vector<SwitchDecision> switches;  // strictly increasing nodes
};

// Elapsed time since the most recent switch, evaluated at nodes 0..K.
// Before the first switch the clock starts at delta_s (the vehicle departs
// free to switch); it resets to 0 at each switch node and then grows by the
// link durations. switch_nodes must be strictly increasing within 1..K.
std::vector<double> lock_trajectory(const DrivingProfile& profile,
                                    const std::vector<int>& switch_nodes, double delta_s);

// Mode in effect after each node: m[0] = initial mode, m[k] drives link k+1.
// Link k therefore runs in m[k-1]. Assumes switch commands are legal.
std::vector<Mode> mode_trajectory(const HybridSystemModel& model, int stage_count,
                                  const HybridControl& ctrl);

struct AdmissibilityReport {
    bool admissible = true;
    std::string reason;  // first violation, empty when admissible
    int item = -1;       // offending link index or switch ordinal (1-based)
};

// Checks, in order: control count matches the profile, switch nodes lie in
// 1..K-1 strictly increasing with legal commands, every u is a member of the
// sampled control set for the mode driving its link, and consecutive switches
// are separated by at least delta_s of route time. The dwell inequality is
// closed (gap == delta_s passes) and evaluated with plain arithmetic on the
// link times — no tolerance. The first switch is always dwell-admissible.
AdmissibilityReport check_admissible(const HybridSystemModel& model,
                                     const DrivingProfile& profile, const HybridControl& ctrl);

inline bool is_admissible(const HybridSystemModel& model, const DrivingProfile& profile,
                          const HybridControl& ctrl) {
    return check_admissible(model, profile, ctrl).admissible;
}

}  // namespace hyreach
