#pragma once

#include "hyreach/levelset.hpp"
#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"
#include "hyreach/value_field.hpp"

namespace hyreach {

// Inputs of one backward-induction run. The profile is used exactly as given;
// callers that want sub-stepped links apply subdivide() first. The initial set
// is the ball described by grid.x0_center / grid.x0_radius.
struct SolveSetup {
    const HybridSystemModel* model = nullptr;
    const DrivingProfile* profile = nullptr;
    GridSpec grid;
    BoxSet box;  // state constraint K
};

struct SolveOptions {
    bool parallel = true;
    int threads = 0;            // 0 keeps the OpenMP runtime default
    int max_stages = -1;        // -1 solves the whole profile
    bool stop_when_empty = true;  // reachable slices shrink monotonically; stop at the first empty one
};

struct SolveReport {
    int stages_computed = 0;     // last stage index stored in the returned field
    int first_empty_stage = -1;  // -1 when every computed slice contains a point
    double wall_time_s = 0.0;
    int nx = 0;
    int np = 0;
};

// Fill layer 0: max(initial-set distance, constraint distance), identical for
// every mode and lock node (the departure mode and lock are unconstrained).
void init_layer(const StateGrid& grid, const BallSet& x0, const BoxSet& box, double* layer);

// Compute layer `stage` from layer `stage - 1`. Two sweeps: every lock node
// p > 0 takes the best one-link transport from the previous layer (lock
// decremented by the link duration, clamped at 0, state pulled back through
// the model's predecessor map, constraint distance folded in); lock node
// p == 0 then takes the best same-stage entry reachable by a mode switch —
// minimum over switch commands and lock nodes >= the dwell time. A model
// whose switch set is empty (locked-off baseline) falls back to transport at
// p == 0 so layers stay finite. Serial and parallel paths run the same
// per-node code and produce bitwise-identical layers.
void backward_step(const HybridSystemModel& model, const BoxSet& box, const StateGrid& grid,
                   const DrivingProfile& profile, int stage, const double* prev, double* next,
                   bool parallel);

// True when some node of the layer has value <= 0.
bool layer_nonempty(const StateGrid& grid, const double* layer);

// Run the backward induction over the profile and return all computed layers.
ValueField solve(const SolveSetup& setup, const SolveOptions& opts = {},
                 SolveReport* report = nullptr);

}  // namespace hyreach
