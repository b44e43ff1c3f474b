#pragma once

#include <iosfwd>
#include <vector>

#include "hyreach/profile.hpp"
#include "hyreach/value_field.hpp"

namespace hyreach {

// The reachable slice at stage k is {x : some (q, p) node has value <= 0}.
bool slice_nonempty(const ValueField& field, int k);

// How far along the profile any state remains reachable. `stage` is the last
// stage with a non-empty slice (slices shrink monotonically, so everything up
// to it is reachable); -1 when even departure is impossible.
struct AutonomyResult {
    int stage = -1;
    double time_s = 0.0;
    double distance_m = 0.0;
    bool route_completed = false;
};
AutonomyResult autonomy(const ValueField& field, const DrivingProfile& profile);

// Minimum arrival time per spatial grid node: the earliest cumulative route
// time T_k at which the node is reachable for some (q, p); +infinity when it
// never is. Row-major over (i1, i2).
std::vector<double> min_time_map(const ValueField& field, const DrivingProfile& profile);

// Same query at one continuous energy state (values interpolated per stage).
double min_time_at(const ValueField& field, const DrivingProfile& profile, double x1, double x2);

// CSV "x1,x2,T" (T is "inf" for unreachable nodes) and "x1,x2,reachable" (0/1).
void write_min_time_csv(const ValueField& field, const DrivingProfile& profile,
                        std::ostream& out);
void write_reach_mask_csv(const ValueField& field, int stage, std::ostream& out);

// Driving-range comparison of the switching powertrain against the locked-off
// baseline, plus the fuel cost of the gained distance.
struct RangeInputs {
    double hybrid_km = 0.0;
    double ev_km = 0.0;
    double fuel_used_l = 0.0;
    double fuel_price_eur_per_l = 0.0;
};
struct RangeReport {
    RangeInputs in;
    double gained_km = 0.0;
    double relative_increase_pct = 0.0;  // +inf when the baseline range is zero
    double cost_eur_per_100km = 0.0;     // +inf when no distance was gained
};
RangeReport make_range_report(const RangeInputs& in);

// Fixed-format text block (distances to three decimals, percentage and cost to
// two); non-finite derived values print as "n/a".
void write_range_summary(const RangeReport& report, std::ostream& out);

}  // namespace hyreach
