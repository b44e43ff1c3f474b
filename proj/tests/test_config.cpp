#include <sstream>

#include "doctest.h"
#include "hyreach/config.hpp"
#include "hyreach/errors.hpp"

using namespace hyreach;
using doctest::Contains;

namespace {
RunConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.ini");
}
}  // namespace

TEST_CASE("a full configuration file round-trips into the run description") {
    RunConfig cfg = parse_text(
        "# demo vehicle\n"
        "[model]\n"
        "type = constant\n"
        "a_x = 0.12\n"
        "a_y = 0.2\n"
        "u_max = 0.05\n"
        "delta_s = 0.5\n"
        "n_u = 4\n"
        "tank_capacity_l = 5\n"
        "fuel_price_eur_per_l = 1.4\n"
        "\n"
        "[levelset]\n"
        "dx = 0.04\n"
        "dp = 0.25\n"
        "domain_lo = -0.1\n"
        "domain_hi = 1.1\n"
        "x0_center = 0.6 0.4\n"
        "x0_radius = 0.03\n"
        "box_lo = 0 0\n"
        "box_hi = 1 1\n"
        "\n"
        "[profile]\n"
        "count = 8\n"
        "distance_m = 12.5\n"
        "speed_mps = 10\n"
        "max_step_s = 0.5\n"
        "\n"
        "[dp]\n"
        "parallel = false\n"
        "threads = 2\n"
        "stop_when_empty = false\n"
        "\n"
        "[synth]\n"
        "target_stage = 7\n"
        "target = 0.5 0.25 1 0.5\n"
        "value_slack = 0.1\n"
        "\n"
        "[output]\n"
        "dir = results\n");

    CHECK(cfg.model_type == "constant");
    CHECK(cfg.params.a_x == 0.12);
    CHECK(cfg.params.a_y == 0.2);
    CHECK(cfg.params.u_max == 0.05);
    CHECK(cfg.params.delta_s == 0.5);
    CHECK(cfg.params.n_u == 4);
    CHECK(cfg.params.tank_capacity_l == 5.0);
    CHECK(cfg.params.fuel_price_eur_per_l == 1.4);
    CHECK(cfg.grid.dx == 0.04);
    CHECK(cfg.grid.dp == 0.25);
    CHECK(cfg.grid.domain_lo == -0.1);
    CHECK(cfg.grid.domain_hi == 1.1);
    CHECK(cfg.grid.x0_center[0] == 0.6);
    CHECK(cfg.grid.x0_center[1] == 0.4);
    CHECK(cfg.grid.x0_radius == 0.03);
    CHECK(cfg.box.lo[0] == 0.0);
    CHECK(cfg.box.hi[1] == 1.0);
    CHECK(cfg.profile_count == 8);
    CHECK(cfg.profile_distance_m == 12.5);
    CHECK(cfg.profile_speed_mps == 10.0);
    CHECK(cfg.max_step_s == 0.5);
    CHECK_FALSE(cfg.parallel);
    CHECK(cfg.threads == 2);
    CHECK_FALSE(cfg.stop_when_empty);
    CHECK(cfg.target_stage == 7);
    REQUIRE(cfg.has_target);
    CHECK(cfg.target.y.soc == 0.5);
    CHECK(cfg.target.y.fuel == 0.25);
    CHECK(cfg.target.q == 1);
    CHECK(cfg.target.p == 0.5);
    CHECK(cfg.value_slack == 0.1);
    CHECK(cfg.output_dir == "results");

    SUBCASE("the described profile is built and sub-stepped") {
        DrivingProfile prof = build_profile(cfg);
        CHECK(prof.stage_count() == 24);  // 8 links of 1.25 s split in three
        CHECK(prof.link(1).dt_s() == doctest::Approx(1.25 / 3.0));
        CHECK(prof.total_distance_m() == doctest::Approx(100.0));
    }
    SUBCASE("the described vehicle validates and exposes the command set") {
        auto model = build_model(cfg);
        CHECK(model->control_set(1).size() == 4);
        CHECK(model->control_set(1).back() == 0.05);
    }
}

TEST_CASE("configuration errors name the file, line and offender") {
    CHECK_THROWS_WITH_AS(parse_text("[model]\nwarp_drive = 9\n"),
                         Contains("test.ini line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[model]\nwarp_drive = 9\n"), Contains("warp_drive"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[warp]\n"), Contains("[warp]"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[model]\na_x 0.1\n"), Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("a_x = 0.1\n"), Contains("section"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[model]\na_x = fast\n"), Contains("a_x"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[model]\r\na_x = 0.1\r\n"), Contains("LF"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[synth]\ntarget = 0.5 0.25 1\n"), Contains("target"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_text("[synth]\ntarget = 0.5 0.25 2 0.5\n"), Contains("mode"),
                         ConfigError);
}

TEST_CASE("command-line overrides reuse the file's key names") {
    RunConfig cfg;
    apply_override(cfg, "dp.parallel=false");
    CHECK_FALSE(cfg.parallel);
    apply_override(cfg, "levelset.dx=0.1");
    CHECK(cfg.grid.dx == 0.1);
    apply_override(cfg, "model.n_u=3");
    CHECK(cfg.params.n_u == 3);
    apply_override(cfg, "output.dir=elsewhere");
    CHECK(cfg.output_dir == "elsewhere");
    CHECK_THROWS_WITH_AS(apply_override(cfg, "dp.parallel"), Contains("section.key=value"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_override(cfg, "dp.warp=1"), Contains("warp"), ConfigError);
}

TEST_CASE("a route needs exactly one source") {
    RunConfig neither;
    CHECK_THROWS_WITH_AS(build_profile(neither), Contains("profile"), ConfigError);

    RunConfig both;
    both.profile_path = "route.csv";
    both.profile_count = 4;
    both.profile_distance_m = 10.0;
    both.profile_speed_mps = 10.0;
    CHECK_THROWS_WITH_AS(build_profile(both), Contains("both"), ConfigError);

    RunConfig constant;
    constant.profile_count = 4;
    constant.profile_distance_m = 10.0;
    constant.profile_speed_mps = 10.0;
    DrivingProfile prof = build_profile(constant);
    CHECK(prof.stage_count() == 4);
    CHECK(prof.total_time_s() == 4.0);
}

TEST_CASE("the tabulated vehicle needs per-link demands at build time") {
    RunConfig cfg = parse_text(
        "[model]\n"
        "type = table\n"
        "demand_per_link = 0.1 0.2 0.1\n"
        "conv_soc = 1.0\n"
        "conv_fuel = 0.5\n");
    CHECK(cfg.model_type == "table");
    auto model = build_model(cfg);
    CHECK(model->drift(2, 0.0, 0)[0] == -0.2);
    CHECK_THROWS_WITH_AS(model->drift(4, 0.0, 0), Contains("link 4"), ConfigError);

    RunConfig empty_table;
    empty_table.model_type = "table";
    CHECK_THROWS_WITH_AS(build_model(empty_table), Contains("demand"), ConfigError);
}
