#include "hyreach/reach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hyreach/util.hpp"

namespace hyreach {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool slice_nonempty(const ValueField& field, int k) {
    const StateGrid& g = field.grid();
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2)
            if (field.min_over_modes(k, i1, i2) <= 0.0) return true;
    return false;
}

AutonomyResult autonomy(const ValueField& field, const DrivingProfile& profile) {
    AutonomyResult out;
    int top = std::min(field.last_stage(), profile.stage_count());
    for (int k = 0; k <= top; ++k) {
        if (!slice_nonempty(field, k)) break;
        out.stage = k;
    }
    if (out.stage >= 0) {
        out.time_s = profile.time_at(out.stage);
        out.distance_m = profile.distance_at(out.stage);
        out.route_completed = out.stage == profile.stage_count();
    }
    return out;
}

std::vector<double> min_time_map(const ValueField& field, const DrivingProfile& profile) {
    const StateGrid& g = field.grid();
    int top = std::min(field.last_stage(), profile.stage_count());
    std::vector<double> times(static_cast<std::size_t>(g.nx()) * g.nx(), kInf);
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2) {
            double& t = times[static_cast<std::size_t>(i1) * g.nx() + i2];
            for (int k = 0; k <= top; ++k)
                if (field.min_over_modes(k, i1, i2) <= 0.0) {
                    t = profile.time_at(k);
                    break;
                }
        }
    return times;
}

double min_time_at(const ValueField& field, const DrivingProfile& profile, double x1,
                   double x2) {
    const StateGrid& g = field.grid();
    int top = std::min(field.last_stage(), profile.stage_count());
    for (int k = 0; k <= top; ++k)
        for (int q = 0; q < StateGrid::nq; ++q)
            for (int ip = 0; ip < g.np(); ++ip)
                if (field.interp(k, x1, x2, q, g.p(ip)) <= 0.0) return profile.time_at(k);
    return kInf;
}

void write_min_time_csv(const ValueField& field, const DrivingProfile& profile,
                        std::ostream& out) {
    const StateGrid& g = field.grid();
    std::vector<double> times = min_time_map(field, profile);
    out << "x1,x2,T\n";
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2) {
            double t = times[static_cast<std::size_t>(i1) * g.nx() + i2];
            out << format_roundtrip(g.x(i1)) << ',' << format_roundtrip(g.x(i2)) << ',';
            if (t == kInf)
                out << "inf";
            else
                out << format_roundtrip(t);
            out << '\n';
        }
}

void write_reach_mask_csv(const ValueField& field, int stage, std::ostream& out) {
    const StateGrid& g = field.grid();
    out << "x1,x2,reachable\n";
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2)
            out << format_roundtrip(g.x(i1)) << ',' << format_roundtrip(g.x(i2)) << ','
                << (field.min_over_modes(stage, i1, i2) <= 0.0 ? 1 : 0) << '\n';
}

RangeReport make_range_report(const RangeInputs& in) {
    RangeReport r;
    r.in = in;
    r.gained_km = in.hybrid_km - in.ev_km;
    r.relative_increase_pct = in.ev_km > 0.0 ? r.gained_km / in.ev_km * 100.0 : kInf;
    r.cost_eur_per_100km = r.gained_km > 0.0
                               ? in.fuel_used_l * in.fuel_price_eur_per_l / r.gained_km * 100.0
                               : kInf;
    return r;
}

namespace {
std::string fixed_or_na(double v, int digits) {
    return std::isfinite(v) ? format_fixed(v, digits) : std::string("n/a");
}
}  // namespace

void write_range_summary(const RangeReport& r, std::ostream& out) {
    out << "hybrid range:          " << format_fixed(r.in.hybrid_km, 3) << " km\n"
        << "engine-off range:      " << format_fixed(r.in.ev_km, 3) << " km\n"
        << "range gained:          " << format_fixed(r.gained_km, 3) << " km\n"
        << "relative increase:     " << fixed_or_na(r.relative_increase_pct, 2) << " %\n"
        << "fuel used:             " << fixed_or_na(r.in.fuel_used_l, 2) << " l\n"
        << "fuel cost per 100 km:  " << fixed_or_na(r.cost_eur_per_100km, 2) << " EUR\n";
}

}  // namespace hyreach
