#pragma once

#include <cstdint>

#include "hyreach/levelset.hpp"
#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"

namespace hyreach {

// Closed-form maximum driving time for the constant-rate vehicle departing with
// energy (soc0, fuel0), unit speed, no state constraints beyond running dry.
// Requires a_x > u_max. Battery-limited when soc0*(a_y+u_max) <= fuel0*(a_x-u_max):
// the battery empties first even at full recharge, and T = soc0/(a_x-u_max).
// Otherwise the engine burns the tank dry at t_star = fuel0/(a_y+u_max) and the
// battery carries on alone: T = (soc0 + u_max*t_star)/a_x.
struct ToyAutonomy {
    bool battery_limited = false;
    double t_star_s = 0.0;    // full-burn time to an empty tank
    double autonomy_s = 0.0;  // maximum driving time
};
ToyAutonomy toy_autonomy(double soc0, double fuel0, const VehicleParams& p);

// Problem definition for exhaustive enumeration. The model's step/predecessor
// define the transition system verbatim (micro fixtures may clamp to a box);
// the profile is used as-is, no subdivision.
struct EnumerationInstance {
    const HybridSystemModel* model = nullptr;
    const DrivingProfile* profile = nullptr;
    const BallSet* x0 = nullptr;
    const BoxSet* box = nullptr;
    std::uint64_t budget = 1'000'000;  // refuse larger jobs outright
};

// Minimum over every admissible (control sequence, switch schedule) pair whose
// trajectory ends at (x, q) after k links with final lock value p, of
//   max( phi(y_0), max_theta phi_obs(y_theta) ).
// Lock matching: p == 0 means a switch at node k itself; p > 0 requires the
// last switch s to satisfy T_k - T_s == p exactly, and a switch-free history
// matches any p >= T_k (the departure lock is free, consistent with a
// p-independent initial layer). Consecutive switches must be >= delta_s apart;
// the first switch is unconstrained. Returns +infinity when no history matches.
double enumerate_value(const EnumerationInstance& inst, const EnergyState& x, Mode q,
                       double p, int k);

// State-constrained variant: histories that leave the box are discarded
// entirely and survivors score phi(y_0) alone. +infinity when none survive.
double enumerate_state_constrained(const EnumerationInstance& inst, const EnergyState& x,
                                   Mode q, double p, int k);

}  // namespace hyreach
