#include "hyreach/dp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyreach/errors.hpp"

namespace hyreach {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything a single-node update needs; built once per stage.
struct StageCtx {
    const HybridSystemModel* model;
    const BoxSet* box;
    const StateGrid* grid;
    std::vector<double> uset[2];
    std::vector<Mode> wset[2];
    int src_link = 0;
    double dt = 0;
    double delta = 0;
};

StageCtx make_ctx(const HybridSystemModel& model, const BoxSet& box, const StateGrid& grid,
                  const DrivingProfile& profile, int stage) {
    StageCtx c;
    c.model = &model;
    c.box = &box;
    c.grid = &grid;
    c.uset[0] = model.control_set(0);
    c.uset[1] = model.control_set(1);
    c.wset[0] = model.switch_set(0);
    c.wset[1] = model.switch_set(1);
    c.src_link = profile.link(stage).source_index;
    c.dt = profile.link(stage).dt_s();
    c.delta = model.lag_s();
    return c;
}

// Best one-link transport into (x, q, p): minimum over admissible controls of
// the previous layer at the pulled-back state, constraint distance folded in.
// The top lock node stands for every lock >= p_max, so it is additionally its
// own one-step predecessor: a switch lying even further back also saturates
// the ladder at the previous stage. Without that branch, histories whose last
// switch is older than the ladder span would be forced onto a bogus recent
// switch and quietly lost.
inline double transport_value(const StageCtx& c, const double* prev, double x1, double x2,
                              int q, double p, bool saturated) {
    double p_prev = std::max(0.0, p - c.dt);
    double best = kInf;
    for (double u : c.uset[q]) {
        EnergyState pre = c.model->predecessor(c.src_link, {x1, x2}, u, q, c.dt);
        double v = c.grid->interp(prev, pre.soc, pre.fuel, q, p_prev);
        if (saturated) v = std::min(v, c.grid->interp(prev, pre.soc, pre.fuel, q, p));
        if (v < best) best = v;
    }
    return std::max(best, c.box->value(x1, x2));
}

// Lock node p == 0 at this stage means the mode was just switched to q: take
// the best same-stage entry at the mode the switch came from, over lock nodes
// that satisfy the dwell time. Falls back to transport when the switch set is
// empty so the layer stays finite (interpolation cannot meet an infinity).
inline double switch_or_transport_value(const StageCtx& c, const double* prev,
                                        const double* fresh, int i1, int i2, int q) {
    const StateGrid& g = *c.grid;
    double best = kInf;
    for (Mode w : c.wset[q]) {
        Mode q_from = c.model->switch_mode(w, q);
        for (int ip = 0; ip < g.np(); ++ip) {
            if (g.p(ip) < c.delta - 1e-12) continue;
            double v = fresh[g.index(i1, i2, q_from, ip)];
            if (v < best) best = v;
        }
    }
    if (c.wset[q].empty()) return transport_value(c, prev, g.x(i1), g.x(i2), q, 0.0, false);
    return best;
}

}  // namespace

void init_layer(const StateGrid& grid, const BallSet& x0, const BoxSet& box, double* layer) {
    for (int i1 = 0; i1 < grid.nx(); ++i1)
        for (int i2 = 0; i2 < grid.nx(); ++i2) {
            double v = std::max(x0.value(grid.x(i1), grid.x(i2)),
                                box.value(grid.x(i1), grid.x(i2)));
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < grid.np(); ++ip) layer[grid.index(i1, i2, q, ip)] = v;
        }
}

void backward_step(const HybridSystemModel& model, const BoxSet& box, const StateGrid& grid,
                   const DrivingProfile& profile, int stage, const double* prev, double* next,
                   bool parallel) {
    StageCtx c = make_ctx(model, box, grid, profile, stage);
    const int nx = grid.nx();

    auto transport_row = [&](int i1) {
        double x1 = grid.x(i1);
        for (int i2 = 0; i2 < nx; ++i2) {
            double x2 = grid.x(i2);
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < grid.np(); ++ip) {
                    if (!(grid.p(ip) > 0.0)) continue;
                    next[grid.index(i1, i2, q, ip)] = transport_value(
                        c, prev, x1, x2, q, grid.p(ip), ip == grid.np() - 1);
                }
        }
    };
    auto switch_row = [&](int i1) {
        for (int i2 = 0; i2 < nx; ++i2)
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < grid.np(); ++ip) {
                    if (grid.p(ip) > 0.0) continue;
                    next[grid.index(i1, i2, q, ip)] =
                        switch_or_transport_value(c, prev, next, i1, i2, q);
                }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i1 = 0; i1 < nx; ++i1) transport_row(i1);
#pragma omp parallel for schedule(static)
        for (int i1 = 0; i1 < nx; ++i1) switch_row(i1);
    } else {
        for (int i1 = 0; i1 < nx; ++i1) transport_row(i1);
        for (int i1 = 0; i1 < nx; ++i1) switch_row(i1);
    }
}

bool layer_nonempty(const StateGrid& grid, const double* layer) {
    std::size_t n = grid.nodes_per_layer();
    for (std::size_t i = 0; i < n; ++i)
        if (layer[i] <= 0.0) return true;
    return false;
}

ValueField solve(const SolveSetup& setup, const SolveOptions& opts, SolveReport* report) {
    if (!setup.model || !setup.profile) throw ConfigError("solve needs a model and a profile");
    const DrivingProfile& prof = *setup.profile;
#ifdef _OPENMP
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
    auto t0 = std::chrono::steady_clock::now();

    StateGrid grid(setup.grid, setup.model->lag_s(), prof.total_time_s());
    BallSet x0{setup.grid.x0_center, setup.grid.x0_radius};
    ValueField field(std::move(grid));
    init_layer(field.grid(), x0, setup.box, field.add_layer());

    int last = prof.stage_count();
    if (opts.max_stages >= 0) last = std::min(last, opts.max_stages);

    int first_empty = layer_nonempty(field.grid(), field.layer(0)) ? -1 : 0;
    for (int k = 1; k <= last; ++k) {
        if (opts.stop_when_empty && first_empty >= 0) break;
        double* next = field.add_layer();
        backward_step(*setup.model, setup.box, field.grid(), prof, k, field.layer(k - 1), next,
                      opts.parallel);
        if (first_empty < 0 && !layer_nonempty(field.grid(), next)) first_empty = k;
    }

    if (report) {
        report->stages_computed = field.last_stage();
        report->first_empty_stage = first_empty;
        report->wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report->nx = field.grid().nx();
        report->np = field.grid().np();
    }
    return field;
}

}  // namespace hyreach
