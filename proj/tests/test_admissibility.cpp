#include "doctest.h"
#include "hyreach/admissibility.hpp"
#include "hyreach/errors.hpp"
#include "hyreach/model.hpp"
#include "hyreach/profile.hpp"

using namespace hyreach;

namespace {
DrivingProfile unit_links(int k) { return constant_profile(k, 10.0, 10.0); }  // 1 s each

HybridControl make_control(const HybridSystemModel& model, int links, Mode initial,
                           std::vector<SwitchDecision> switches) {
    HybridControl c;
    c.initial_mode = initial;
    c.switches = std::move(switches);
    std::vector<Mode> m = mode_trajectory(model, links, c);
    for (int k = 1; k <= links; ++k)
        c.u.push_back(model.control_set(m[k - 1]).front());
    return c;
}
}  // namespace

TEST_CASE("lock trajectories over five unit links, dwell time 1") {
    DrivingProfile prof = unit_links(5);

    SUBCASE("one switch at node 3") {
        auto pi = lock_trajectory(prof, {3}, 1.0);
        std::vector<double> expect{1, 2, 3, 0, 1, 2};
        REQUIRE(pi.size() == 6);
        for (int k = 0; k <= 5; ++k) CHECK(pi[k] == expect[k]);
    }
    SUBCASE("no switches: the lock ages from the dwell time onward") {
        auto pi = lock_trajectory(prof, {}, 1.0);
        for (int k = 0; k <= 5; ++k) CHECK(pi[k] == 1.0 + k);
    }
    SUBCASE("switches at nodes 2 and 4") {
        auto pi = lock_trajectory(prof, {2, 4}, 1.0);
        CHECK(pi[2] == 0.0);
        CHECK(pi[3] == 1.0);
        CHECK(pi[4] == 0.0);
        CHECK(pi[5] == 1.0);
    }
    SUBCASE("nodes must be valid and strictly increasing") {
        CHECK_THROWS_AS(lock_trajectory(prof, {0}, 1.0), ConfigError);
        CHECK_THROWS_AS(lock_trajectory(prof, {6}, 1.0), ConfigError);
        CHECK_THROWS_AS(lock_trajectory(prof, {3, 3}, 1.0), ConfigError);
    }
}

TEST_CASE("mode trajectory applies the toggle at its node") {
    auto model = toy_vehicle(VehicleParams{});
    HybridControl c;
    c.initial_mode = 0;
    c.switches = {{3, 1}};
    auto m = mode_trajectory(*model, 5, c);
    std::vector<Mode> expect{0, 0, 0, 1, 1, 1};
    CHECK(m == expect);
}

TEST_CASE("admissibility: dwell gaps are closed inequalities on exact link times") {
    VehicleParams p;  // delta_s = 1
    auto model = toy_vehicle(p);
    DrivingProfile prof = unit_links(5);

    SUBCASE("consecutive switches exactly one dwell time apart are legal") {
        auto c = make_control(*model, 5, 0, {{3, 1}, {4, 0}});
        auto rep = check_admissible(*model, prof, c);
        CHECK(rep.admissible);
        CHECK(rep.reason.empty());
    }
    SUBCASE("a gap short of the dwell time is rejected and named") {
        VehicleParams wide = p;
        wide.delta_s = 1.5;
        auto m2 = toy_vehicle(wide);
        auto c = make_control(*m2, 5, 0, {{3, 1}, {4, 0}});
        auto rep = check_admissible(*m2, prof, c);
        CHECK_FALSE(rep.admissible);
        CHECK(rep.reason.find("switch 2") != std::string::npos);
    }
    SUBCASE("the first switch owes no dwell to the departure node") {
        auto c = make_control(*model, 5, 0, {{1, 1}});
        CHECK(check_admissible(*model, prof, c).admissible);
    }
    SUBCASE("the lock value one node before a tight switch is 0, and that is fine") {
        // Dwell admissibility constrains the time between switch nodes, not the
        // lock one link earlier: for back-to-back switches at {3, 4} the lock at
        // node 3 is 0 even though the switch at node 4 is perfectly legal.
        auto pi = lock_trajectory(prof, {3, 4}, 1.0);
        CHECK(pi[3] == 0.0);
        auto c = make_control(*model, 5, 0, {{3, 1}, {4, 0}});
        CHECK(check_admissible(*model, prof, c).admissible);
    }
}

TEST_CASE("admissibility rejects malformed controls with precise reasons") {
    auto model = toy_vehicle(VehicleParams{});
    DrivingProfile prof = unit_links(4);
    HybridControl good = make_control(*model, 4, 0, {{2, 1}});
    REQUIRE(check_admissible(*model, prof, good).admissible);

    SUBCASE("wrong number of controls") {
        HybridControl c = good;
        c.u.pop_back();
        auto rep = check_admissible(*model, prof, c);
        CHECK_FALSE(rep.admissible);
        CHECK(rep.reason.find("4") != std::string::npos);
    }
    SUBCASE("control outside the active mode's set") {
        HybridControl c = good;
        c.u[3] = 0.005;  // not one of the engine-on samples
        auto rep = check_admissible(*model, prof, c);
        CHECK_FALSE(rep.admissible);
        CHECK(rep.item == 4);
    }
    SUBCASE("recharge while the engine is off") {
        HybridControl c = good;
        c.u[0] = model->control_set(1)[2];
        CHECK_FALSE(check_admissible(*model, prof, c).admissible);
    }
    SUBCASE("switch node outside 1..K-1") {
        HybridControl c = good;
        c.switches = {{4, 1}};
        CHECK_FALSE(check_admissible(*model, prof, c).admissible);
    }
    SUBCASE("illegal switch command for the current mode") {
        HybridControl c = good;
        c.switches = {{2, 0}};  // already off
        auto rep = check_admissible(*model, prof, c);
        CHECK_FALSE(rep.admissible);
    }
    SUBCASE("bad initial mode") {
        HybridControl c = good;
        c.initial_mode = 2;
        CHECK_FALSE(check_admissible(*model, prof, c).admissible);
    }
}
