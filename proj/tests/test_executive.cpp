#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/scenarios.hpp"
#include "warebot/executive.hpp"
#include "warebot/plan_io.hpp"

using namespace warebot;
using geom::Vec2;

namespace {

double known_map_clearance(const world::Scenario& s, Vec2 p) {
    double best = s.workspace.interior_clearance(p);
    for (const auto& o : s.obstacles) {
        if (!o.known) continue;
        if (std::holds_alternative<world::DiskShape>(o.shape)) {
            const auto& d = std::get<world::DiskShape>(o.shape);
            best = std::min(best, (p - d.center).norm() - d.radius);
        } else {
            best = std::min(best,
                            geom::signed_distance_polygon(p, std::get<world::PolygonShape>(o.shape).vertices));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("five-action plan for the walls scenario") {
    const auto s = scenarios::walls_two_objects();
    const auto plan = executive::deliberative_plan(s);
    REQUIRE(plan.actions.size() == 5);
    CHECK(plan.actions[0].kind == executive::ActionKind::move_to_object);
    CHECK(plan.actions[0].object_id == 1);
    CHECK(plan.actions[1].kind == executive::ActionKind::position_object);
    CHECK(plan.actions[1].object_id == 1);
    CHECK(plan.actions[2].kind == executive::ActionKind::move_to_object);
    CHECK(plan.actions[2].object_id == 2);
    CHECK(plan.actions[3].kind == executive::ActionKind::position_object);
    CHECK(plan.actions[3].object_id == 2);
    CHECK(plan.actions[4].kind == executive::ActionKind::move);

    SUBCASE("endpoint contracts hold exactly") {
        CHECK((plan.actions[0].path.start() - s.robot_start).norm() == 0.0);
        CHECK((plan.actions[0].path.end() - s.objects[0].start).norm() == 0.0);
        CHECK((plan.actions[1].path.start() - s.objects[0].start).norm() == 0.0);
        CHECK((plan.actions[1].path.end() - s.objects[0].goal).norm() == 0.0);
        CHECK((plan.actions[2].path.end() - s.objects[1].start).norm() == 0.0);
        CHECK((plan.actions[4].path.end() - *s.params.nest).norm() == 0.0);
    }
    SUBCASE("paths keep the planning margin on the known map at 1 cm sampling") {
        const double margin = executive::planning_margin(s);
        for (const auto& action : plan.actions) {
            const double len = action.path.length();
            const int n = std::max(1, static_cast<int>(len / 0.01));
            for (int i = 0; i <= n; ++i) {
                CHECK(known_map_clearance(s, action.path.eval(static_cast<double>(i) / n)) >=
                      margin - 1e-9);
            }
        }
    }
}

TEST_CASE("single object in an empty known map gives two straight actions") {
    auto s = scenarios::empty_square(20.0);
    s.robot_start = {4, 4};
    scenarios::MovableObject o;
    o.id = 1;
    o.radius = 0.5;
    o.start = {10, 10};
    o.goal = {16, 10};
    s.objects.push_back(o);
    const auto plan = executive::deliberative_plan(s);
    REQUIRE(plan.actions.size() == 2);
    CHECK(plan.actions[0].path.segments().size() == 1);
    CHECK(plan.actions[1].path.segments().size() == 1);
}

TEST_CASE("walled-off goal reports no path") {
    auto s = scenarios::empty_square(20.0);
    s.robot_start = {4, 10};
    // A known box sealing off the right half except for a sub-margin slit.
    s.obstacles.push_back(scenarios::box_obstacle(1, 9.5, 0.0, 10.5, 19.0, /*known=*/true));
    scenarios::MovableObject o;
    o.id = 1;
    o.radius = 0.5;
    o.start = {15, 10};
    o.goal = {16, 10};
    s.objects.push_back(o);
    s.params.eps = 0.2;
    CHECK_THROWS_AS(executive::deliberative_plan(s), NoPath);
}

TEST_CASE("plan action chaining respects gripper preconditions") {
    const auto s = scenarios::walls_two_objects();
    const auto plan = executive::deliberative_plan(s);
    bool gripper = false;
    for (const auto& a : plan.actions) {
        switch (a.kind) {
            case executive::ActionKind::move_to_object:
                CHECK(!gripper);
                gripper = true;
                break;
            case executive::ActionKind::position_object:
                CHECK(gripper);
                gripper = false;
                break;
            case executive::ActionKind::move:
                CHECK(!gripper);
                break;
        }
    }
}

TEST_CASE("plan serialization round trip") {
    const auto s = scenarios::walls_two_objects();
    const auto plan = executive::deliberative_plan(s);
    const std::string text = io::save_plan(plan);
    const auto loaded = io::load_plan(text);
    REQUIRE(loaded.actions.size() == plan.actions.size());
    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        CHECK(loaded.actions[i].kind == plan.actions[i].kind);
        CHECK(loaded.actions[i].object_id == plan.actions[i].object_id);
        CHECK((loaded.actions[i].path.start() - plan.actions[i].path.start()).norm() <= 1e-9);
        CHECK((loaded.actions[i].path.end() - plan.actions[i].path.end()).norm() <= 1e-9);
        CHECK(loaded.actions[i].path.length() == doctest::Approx(plan.actions[i].path.length()));
    }
    // Serialization is bytewise stable.
    CHECK(io::save_plan(loaded) == text);
}
