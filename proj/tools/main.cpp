#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyreach/config.hpp"
#include "hyreach/dp.hpp"
#include "hyreach/errors.hpp"
#include "hyreach/oracle.hpp"
#include "hyreach/reach.hpp"
#include "hyreach/synth.hpp"
#include "hyreach/util.hpp"

namespace fs = std::filesystem;
using namespace hyreach;

namespace {

struct Cli {
    std::string config_path;
    std::string output_dir;
    int threads = -1;
    std::vector<std::string> overrides;

    std::string field_path;            // export
    std::vector<double> dx_sweep;      // converge
};

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + p.string() + " for writing");
    return out;
}

RunConfig make_config(const Cli& cli) {
    if (cli.config_path.empty()) throw ConfigError("--config is required for this command");
    RunConfig cfg = load_config(cli.config_path);
    for (const std::string& s : cli.overrides) apply_override(cfg, s);
    if (!cli.output_dir.empty()) cfg.output_dir = cli.output_dir;
    if (cli.threads >= 0) cfg.threads = cli.threads;
    return cfg;
}

struct Instance {
    RunConfig cfg;
    std::unique_ptr<HybridSystemModel> model;
    DrivingProfile profile;
};

Instance make_instance(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    for (const std::string& w : cfg.params.validate()) std::cerr << "warning: " << w << '\n';
    auto model = build_model(cfg);
    DrivingProfile prof = build_profile(cfg, fs::path(cli.config_path).parent_path());
    return Instance{std::move(cfg), std::move(model), std::move(prof)};
}

ValueField run_solve(const Instance& inst, SolveReport& rep, int max_stages = -1) {
    SolveSetup setup{inst.model.get(), &inst.profile, inst.cfg.grid, inst.cfg.box};
    SolveOptions opts;
    opts.parallel = inst.cfg.parallel;
    opts.threads = inst.cfg.threads;
    opts.max_stages = max_stages;
    opts.stop_when_empty = inst.cfg.stop_when_empty;
    return solve(setup, opts, &rep);
}

int cmd_solve(const Cli& cli) {
    Instance inst = make_instance(cli);
    SolveReport rep;
    ValueField field = run_solve(inst, rep);

    fs::path dir = inst.cfg.output_dir;
    fs::create_directories(dir);
    field.dump(dir / "field.bin");
    {
        auto out = open_out(dir / "min_time.csv");
        write_min_time_csv(field, inst.profile, out);
    }
    {
        auto out = open_out(dir / "reach_mask.csv");
        write_reach_mask_csv(field, field.last_stage(), out);
    }
    {
        auto out = open_out(dir / "report.txt");
        out << "stages_computed: " << rep.stages_computed << '\n'
            << "first_empty_stage: " << rep.first_empty_stage << '\n'
            << "grid_nx: " << rep.nx << '\n'
            << "grid_np: " << rep.np << '\n'
            << "route_links: " << inst.profile.stage_count() << '\n'
            << "route_time_s: " << format_roundtrip(inst.profile.total_time_s()) << '\n';
    }
    std::cout << "solved " << rep.stages_computed << " stages on a " << rep.nx << "x" << rep.nx
              << "x2x" << rep.np << " grid in " << format_fixed(rep.wall_time_s, 2) << " s\n"
              << "results in " << dir.string() << '\n';
    return 0;
}

int cmd_autonomy(const Cli& cli) {
    Instance inst = make_instance(cli);
    SolveReport rep;
    ValueField field = run_solve(inst, rep);
    AutonomyResult hybrid = autonomy(field, inst.profile);
    if (hybrid.stage < 0)
        throw UnreachableTargetError("no feasible departure state inside the constraint box");

    auto ev = ev_variant(*inst.model);
    SolveSetup setup{ev.get(), &inst.profile, inst.cfg.grid, inst.cfg.box};
    SolveOptions opts;
    opts.parallel = inst.cfg.parallel;
    opts.threads = inst.cfg.threads;
    ValueField ev_field = solve(setup, opts);
    AutonomyResult ev_only = autonomy(ev_field, inst.profile);

    // Fuel spent over the synthesized maximum-range trajectory, if one exists.
    double fuel_used_l = std::numeric_limits<double>::quiet_NaN();
    try {
        if (auto target = pick_target(field, hybrid.stage)) {
            HybridTrajectory traj = synthesize(field, *inst.model, inst.profile, inst.cfg.box,
                                               *target, hybrid.stage);
            fuel_used_l = (traj.points.front().y.fuel - traj.points.back().y.fuel) *
                          inst.cfg.params.tank_capacity_l;
        }
    } catch (const ReconstructionError&) {
        // range numbers stand on their own; the cost line degrades to n/a
    }

    RangeReport report = make_range_report(RangeInputs{hybrid.distance_m / 1000.0,
                                                       ev_only.distance_m / 1000.0, fuel_used_l,
                                                       inst.cfg.params.fuel_price_eur_per_l});
    fs::path dir = inst.cfg.output_dir;
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "range_summary.txt");
        write_range_summary(report, out);
    }
    std::cout << "switching powertrain: stage " << hybrid.stage << ", "
              << format_fixed(hybrid.time_s, 3) << " s, " << format_fixed(hybrid.distance_m, 1)
              << " m" << (hybrid.route_completed ? " (route completed)" : "") << '\n'
              << "engine locked off:    stage " << ev_only.stage << ", "
              << format_fixed(ev_only.time_s, 3) << " s, " << format_fixed(ev_only.distance_m, 1)
              << " m" << (ev_only.route_completed ? " (route completed)" : "") << '\n';
    write_range_summary(report, std::cout);
    return 0;
}

int cmd_synth(const Cli& cli) {
    Instance inst = make_instance(cli);
    SolveReport rep;
    ValueField field = run_solve(inst, rep);

    int kappa = inst.cfg.target_stage;
    if (kappa < 0) {
        kappa = autonomy(field, inst.profile).stage;
        if (kappa < 0)
            throw UnreachableTargetError("no feasible departure state inside the constraint box");
    } else if (kappa > field.last_stage()) {
        throw UnreachableTargetError("stage " + std::to_string(kappa) +
                                     " was not reached (last solved stage " +
                                     std::to_string(field.last_stage()) + ")");
    }
    HybridPoint target;
    if (inst.cfg.has_target) {
        target = inst.cfg.target;
    } else {
        auto picked = pick_target(field, kappa);
        if (!picked)
            throw UnreachableTargetError("stage " + std::to_string(kappa) +
                                         " has an empty reachable slice");
        target = *picked;
    }

    SynthOptions sopts;
    sopts.value_slack = inst.cfg.value_slack;
    HybridTrajectory traj =
        synthesize(field, *inst.model, inst.profile, inst.cfg.box, target, kappa, sopts);

    DrivingProfile head = inst.profile.head(kappa);
    ReplayResult replay = forward_simulate(*inst.model, head, traj.control,
                                           traj.points.front().y, inst.cfg.box,
                                           field.grid().dx());
    double max_dev = 0.0;
    for (int k = 0; k <= kappa; ++k) {
        max_dev = std::max(max_dev, std::abs(replay.states[k].soc - traj.points[k].y.soc));
        max_dev = std::max(max_dev, std::abs(replay.states[k].fuel - traj.points[k].y.fuel));
    }

    fs::path dir = inst.cfg.output_dir;
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "trajectory.csv");
        write_trajectory_csv(traj, out);
    }
    std::cout << "target: stage " << kappa << " at (" << format_roundtrip(target.y.soc) << ", "
              << format_roundtrip(target.y.fuel) << "), mode " << target.q << ", lock "
              << format_roundtrip(target.p) << " s\n"
              << "departure: (" << format_roundtrip(traj.points.front().y.soc) << ", "
              << format_roundtrip(traj.points.front().y.fuel) << "), mode "
              << traj.points.front().q << '\n'
              << "switches: " << traj.control.switches.size() << ", controls: "
              << traj.control.u.size() << '\n'
              << "admissible: " << (replay.admissibility.admissible ? "yes" : "no");
    if (!replay.admissibility.admissible) std::cout << " (" << replay.admissibility.reason << ")";
    std::cout << '\n'
              << "replay stays in box: " << (replay.stays_in_box ? "yes" : "no") << '\n'
              << "replay deviation: " << format_roundtrip(max_dev) << '\n'
              << "trajectory written to " << (dir / "trajectory.csv").string() << '\n';
    if (!replay.admissibility.admissible) return 1;
    return 0;
}

// Largest closed-form depletion time over the departure ball: the solver's
// autonomy converges to the best departure state, not to the ball center.
double ball_max_autonomy(const VehicleParams& p, const std::array<double, 2>& c, double r) {
    double best = 0.0;
    for (int i = 0; i < 3600; ++i) {
        double th = 2.0 * std::numbers::pi * i / 3600.0;
        best = std::max(best,
                        toy_autonomy(c[0] + r * std::cos(th), c[1] + r * std::sin(th), p)
                            .autonomy_s);
    }
    return best;
}

int cmd_converge(const Cli& cli) {
    Instance inst = make_instance(cli);
    std::vector<double> sweep = cli.dx_sweep;
    if (sweep.empty()) sweep = {0.05, 0.04, 0.03, 0.02, 0.01};

    double ref = std::numeric_limits<double>::quiet_NaN();
    if (inst.cfg.model_type == "constant" && inst.cfg.params.a_x > inst.cfg.params.u_max)
        ref = ball_max_autonomy(inst.cfg.params, inst.cfg.grid.x0_center,
                                inst.cfg.grid.x0_radius);

    fs::path dir = inst.cfg.output_dir;
    fs::create_directories(dir);
    auto out = open_out(dir / "converge.csv");
    out << "dx,stage,time_s,abs_err\n";
    std::cout << "dx       stage  time_s     abs_err\n";
    for (double dx : sweep) {
        GridSpec gs = inst.cfg.grid;
        gs.dx = dx;
        SolveSetup setup{inst.model.get(), &inst.profile, gs, inst.cfg.box};
        SolveOptions opts;
        opts.parallel = inst.cfg.parallel;
        opts.threads = inst.cfg.threads;
        SolveReport rep;
        ValueField field = solve(setup, opts, &rep);
        AutonomyResult a = autonomy(field, inst.profile);
        double err = std::isnan(ref) ? ref : std::abs(a.time_s - ref);
        out << format_roundtrip(dx) << ',' << a.stage << ',' << format_roundtrip(a.time_s)
            << ',' << (std::isnan(err) ? "n/a" : format_roundtrip(err)) << '\n';
        std::cout << format_fixed(dx, 4) << "   " << a.stage << "     "
                  << format_fixed(a.time_s, 4) << "     "
                  << (std::isnan(err) ? "n/a" : format_fixed(err, 4)) << "   ("
                  << format_fixed(rep.wall_time_s, 2) << " s)\n";
    }
    return 0;
}

int cmd_export(const Cli& cli) {
    if (cli.field_path.empty()) throw ConfigError("--field is required for export");
    Instance inst = make_instance(cli);
    ValueField field = ValueField::load(cli.field_path);

    fs::path dir = inst.cfg.output_dir;
    fs::create_directories(dir);
    for (int k = 0; k <= field.last_stage(); ++k) {
        auto out = open_out(dir / ("stage_" + std::to_string(k) + ".csv"));
        field.write_stage_csv(k, out);
    }
    {
        auto out = open_out(dir / "min_time.csv");
        write_min_time_csv(field, inst.profile, out);
    }
    std::cout << "exported " << field.stages() << " stage layers to " << dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"level-set reachability, driving range and power-management synthesis\n"
                 "for a two-source powertrain with switching lag"};
    app.require_subcommand(1);
    app.fallthrough();  // let -c / -o / --set appear after the subcommand name

    Cli cli;
    app.add_option("-c,--config", cli.config_path, "INI run configuration");
    app.add_option("-o,--output", cli.output_dir, "output directory (overrides [output] dir)");
    app.add_option("--threads", cli.threads, "OpenMP thread count (0 = runtime default)");
    app.add_option("--set", cli.overrides, "override one config value, e.g. --set dp.parallel=false")
        ->type_name("SECTION.KEY=VALUE");

    CLI::App* c_solve = app.add_subcommand(
        "solve", "run the backward induction; write the value field and reach maps");
    CLI::App* c_autonomy = app.add_subcommand(
        "autonomy", "maximum driving range, switching vs engine locked off");
    CLI::App* c_synth = app.add_subcommand(
        "synth", "synthesize a power-management controller from the value field");
    CLI::App* c_converge = app.add_subcommand(
        "converge", "re-solve under grid refinement and report range convergence");
    c_converge->add_option("--dx", cli.dx_sweep, "grid spacings to sweep (finest last)");
    CLI::App* c_export = app.add_subcommand(
        "export", "turn a dumped value field back into per-stage CSV tables");
    c_export->add_option("--field", cli.field_path, "field.bin produced by solve")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_solve->parsed()) return cmd_solve(cli);
        if (c_autonomy->parsed()) return cmd_autonomy(cli);
        if (c_synth->parsed()) return cmd_synth(cli);
        if (c_converge->parsed()) return cmd_converge(cli);
        if (c_export->parsed()) return cmd_export(cli);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnreachableTargetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
