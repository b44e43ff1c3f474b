#include <cstring>
#include <iostream>

#include "CLI11.hpp"
#include "hyreach/dp.hpp"
#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"
#include "hyreach/util.hpp"

using namespace hyreach;

// Times the OpenMP sweep against the serial reference on the same instance and
// checks that every layer matches bit for bit (both paths run identical
// per-node code, so any drift is a bug, not a tolerance matter).
int main(int argc, char** argv) {
    CLI::App app{"backward-induction benchmark: serial reference vs OpenMP sweep"};
    double dx = 0.02;
    int links = 10;
    double max_step_s = 0.4;
    int threads = 0;
    app.add_option("--dx", dx, "grid spacing");
    app.add_option("--links", links, "route links of 1 s each");
    app.add_option("--max-step", max_step_s, "sub-stepping bound, s");
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");
    CLI11_PARSE(app, argc, argv);

    VehicleParams params;
    auto model = toy_vehicle(params);
    DrivingProfile profile = subdivide(constant_profile(links, 10.0, 10.0), max_step_s);

    SolveSetup setup;
    setup.model = model.get();
    setup.profile = &profile;
    setup.grid.dx = dx;
    SolveOptions opts;
    opts.threads = threads;
    opts.stop_when_empty = false;

    opts.parallel = false;
    SolveReport serial_rep;
    ValueField serial = solve(setup, opts, &serial_rep);

    opts.parallel = true;
    SolveReport parallel_rep;
    ValueField parallel = solve(setup, opts, &parallel_rep);

    std::cout << "instance: " << profile.stage_count() << " links, grid " << serial_rep.nx << "x"
              << serial_rep.nx << "x2x" << serial_rep.np << ", " << serial.stages()
              << " layers\n";
    std::cout << "serial:   " << format_fixed(serial_rep.wall_time_s, 3) << " s\n";
    std::cout << "parallel: " << format_fixed(parallel_rep.wall_time_s, 3) << " s  (speedup "
              << format_fixed(serial_rep.wall_time_s / parallel_rep.wall_time_s, 2) << "x)\n";

    if (serial.stages() != parallel.stages()) {
        std::cout << "layer count mismatch: " << serial.stages() << " vs " << parallel.stages()
                  << '\n';
        return 1;
    }
    std::size_t bytes = serial.grid().nodes_per_layer() * sizeof(double);
    for (int k = 0; k < serial.stages(); ++k)
        if (std::memcmp(serial.layer(k), parallel.layer(k), bytes) != 0) {
            std::cout << "layers differ at stage " << k << '\n';
            return 1;
        }
    std::cout << "layers identical: yes\n";
    return 0;
}
