#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "hyreach/admissibility.hpp"
#include "hyreach/dp.hpp"

namespace hyreach {

// One hybrid state: energy pair, engine mode, time since the last switch.
struct HybridPoint {
    EnergyState y;
    Mode q = 0;
    double p = 0.0;
};

// One node of a synthesized trajectory (forward route order, stage 0 first).
struct TrajectoryPoint {
    int stage = 0;
    double time_s = 0.0;
    EnergyState y;
    Mode q = 0;
    double lock_s = 0.0;
    double u = 0.0;       // control applied on the incoming link (0 at stage 0)
    bool switched = false;  // a mode switch was adopted at this node
    bool in_box = false;    // inside the state constraint
};

struct HybridTrajectory {
    std::vector<TrajectoryPoint> points;  // stages 0..target_stage
    HybridControl control;                // drives links 1..target_stage
    int target_stage = 0;
};

struct SynthOptions {
    // Reconstruction aborts when the best value the walk can follow exceeds
    // this; <= 0 picks one grid cell (field spacing).
    double value_slack = 0.0;
};

// Best node of the stage-k slice to synthesize toward: the one with the
// smallest value, preferring lock nodes p > 0 (a lock-0 target encodes a
// switch at the target node itself, which the emitted control cannot carry).
// Empty when the slice has no node with value <= 0.
std::optional<HybridPoint> pick_target(const ValueField& field, int k);

// Walk the value layers backward from `target` at stage `kappa` and rebuild a
// control achieving it: at lock exactly 0 the walk first crosses the recorded
// switch (choosing the source mode / dwell node with the smallest same-stage
// value), then follows the best one-link transport (ties to the smallest
// control), decrementing the lock. Points come back in forward route order
// with locks recomputed from the recorded switch schedule; a switch recorded
// at the target node itself appears in the points but is omitted from the
// control (it would drive nothing). Throws UnreachableTargetError when the
// target value is positive, ReconstructionError when the walk loses the
// reachable set.
HybridTrajectory synthesize(const ValueField& field, const HybridSystemModel& model,
                            const DrivingProfile& profile, const BoxSet& box,
                            const HybridPoint& target, int kappa,
                            const SynthOptions& opts = {});

// Forward replay of a control from a concrete departure state. The profile
// must cover exactly the links the control drives (truncate with head()).
struct ReplayResult {
    std::vector<EnergyState> states;  // y_0 .. y_K
    std::vector<Mode> modes;          // m_0 .. m_K
    std::vector<double> locks;        // pi_0 .. pi_K
    AdmissibilityReport admissibility;
    bool stays_in_box = false;  // every state within the (inflated) constraint
};
ReplayResult forward_simulate(const HybridSystemModel& model, const DrivingProfile& profile,
                              const HybridControl& ctrl, const EnergyState& y0,
                              const BoxSet& box, double box_inflate = 0.0);

// CSV "stage,time_s,soc,fuel,q,p,u,switched".
void write_trajectory_csv(const HybridTrajectory& traj, std::ostream& out);

}  // namespace hyreach
