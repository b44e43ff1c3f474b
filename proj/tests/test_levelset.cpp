#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyreach/errors.hpp"
#include "hyreach/levelset.hpp"

using namespace hyreach;

TEST_CASE("ball signed distance") {
    BallSet b{{0.5, 0.5}, 0.05};
    CHECK(b.value(0.5, 0.5) == -0.05);
    CHECK(b.value(0.55, 0.5) == doctest::Approx(0.0));
    CHECK(b.value(0.5, 0.8) == doctest::Approx(0.25));
}

TEST_CASE("box max-norm signed distance, closed boundary") {
    BoxSet box;  // [0,1]^2
    CHECK(box.value(0.5, 0.5) == -0.5);
    CHECK(box.value(0.0, 0.5) == 0.0);
    CHECK(box.value(0.5, 0.0) == 0.0);
    CHECK(box.value(-0.1, 0.5) == doctest::Approx(0.1));
    CHECK(box.value(1.3, 1.2) == doctest::Approx(0.3));
    CHECK(box.contains(1.0, 1.0));
    CHECK_FALSE(box.contains(1.0001, 0.5));
    CHECK(box.contains(1.0625, 0.5, 0.0625));  // inflated membership, dyadic probe
}

TEST_CASE("lock ladder: half the dwell time, capped just past it") {
    GridSpec gs;  // dx 0.05 over [-0.2, 1.2]
    StateGrid g(gs, /*delta_s=*/1.0, /*horizon_s=*/10.0);
    CHECK(g.nx() == 29);
    CHECK(g.x(0) == -0.2);
    CHECK(g.x(g.nx() - 1) == doctest::Approx(1.2));
    REQUIRE(g.np() == 5);
    std::vector<double> expect{0.0, 0.5, 1.0, 1.5, 2.0};
    for (int i = 0; i < 5; ++i) CHECK(g.p(i) == doctest::Approx(expect[i]));

    SUBCASE("short horizon caps the ladder sooner") {
        StateGrid short_g(gs, 1.0, 1.2);
        CHECK(short_g.p_max() == doctest::Approx(1.0));
    }
    SUBCASE("a grid with no node past the dwell time is rejected") {
        CHECK_THROWS_WITH_AS(StateGrid(gs, 1.0, 0.4), doctest::Contains("dwell"), ConfigError);
    }
}

TEST_CASE("trilinear interpolation: exact at nodes, linear between, clamped outside") {
    StateGrid g = make_raw_grid(0.0, 0.25, 5, {0.0, 0.5, 1.0});
    std::vector<double> layer(g.nodes_per_layer());
    // a field linear in all three axes: v = x1 + 2*x2 + 3*p  (per mode offset)
    for (int i1 = 0; i1 < g.nx(); ++i1)
        for (int i2 = 0; i2 < g.nx(); ++i2)
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < g.np(); ++ip)
                    layer[g.index(i1, i2, q, ip)] =
                        g.x(i1) + 2 * g.x(i2) + 3 * g.p(ip) + 10 * q;

    CHECK(g.interp(layer.data(), 0.5, 0.75, 0, 0.5) == doctest::Approx(0.5 + 1.5 + 1.5));
    CHECK(g.interp(layer.data(), 0.5, 0.75, 1, 0.5) == doctest::Approx(0.5 + 1.5 + 1.5 + 10));
    // off-node in every axis
    CHECK(g.interp(layer.data(), 0.3, 0.6, 0, 0.25) ==
          doctest::Approx(0.3 + 1.2 + 0.75));
    // clamped: queries outside the axes saturate at the boundary nodes
    CHECK(g.interp(layer.data(), -5.0, 0.0, 0, 0.0) == doctest::Approx(0.0));
    CHECK(g.interp(layer.data(), 2.0, 2.0, 0, 9.0) == doctest::Approx(1.0 + 2.0 + 3.0));

    SUBCASE("node lookups are bit-exact, not just approximate") {
        for (int i1 = 0; i1 < g.nx(); ++i1)
            for (int ip = 0; ip < g.np(); ++ip)
                CHECK(g.interp(layer.data(), g.x(i1), 0.5, 1, g.p(ip)) ==
                      layer[g.index(i1, 2, 1, ip)]);
    }
}

TEST_CASE("locate clamps and splits exactly on dyadic grids") {
    StateGrid g = make_raw_grid(0.0, 0.25, 5, {0.0, 0.5});
    AxisLoc at = g.locate_x(0.75);
    CHECK(at.i0 == 3);
    CHECK(at.w == 0.0);
    AxisLoc mid = g.locate_x(0.375);
    CHECK(mid.i0 == 1);
    CHECK(mid.w == 0.5);
    AxisLoc lo = g.locate_x(-1.0);
    CHECK(lo.i0 == 0);
    CHECK(lo.w == 0.0);
    AxisLoc hi = g.locate_x(7.0);
    CHECK(hi.i0 == 3);  // clamped to the top interval
    CHECK(hi.w == 1.0);
    AxisLoc p = g.locate_p(0.25);
    CHECK(p.i0 == 0);
    CHECK(p.w == doctest::Approx(0.5));
}
