#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "support/oracles.hpp"
#include "support/scenarios.hpp"
#include "warebot/reactive.hpp"

using namespace warebot;
using geom::ConvexRegion;
using geom::RefPath;
using geom::Vec2;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("projected path goal") {
    const auto straight = RefPath::line({0, 0}, {10, 0});
    SUBCASE("line-ball goal") {
        const auto [alpha, goal] = reactive::projected_path_goal(straight, {0, 0}, 2.0, 0.0);
        CHECK(alpha == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(goal.x == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("at the path end the index saturates") {
        const auto [alpha, goal] = reactive::projected_path_goal(straight, {10, 0}, 0.5, 0.3);
        CHECK(alpha == doctest::Approx(1.0));
        CHECK(goal.x == doctest::Approx(10.0));
    }
    SUBCASE("ball miss retains the previous index") {
        const auto [alpha, goal] = reactive::projected_path_goal(straight, {5, 4}, 0.5, 0.37);
        CHECK(alpha == doctest::Approx(0.37));
        CHECK(goal.x == doctest::Approx(3.7).epsilon(1e-9));
    }
    SUBCASE("serpentine path: the ball spanning two windings picks the larger index") {
        const auto serp = RefPath::polyline({{0, 0}, {2, 3}, {4, 0}, {6, 3}, {8, 0}});
        const Vec2 x{4, 1.2};
        const double d = 1.6;
        const auto [alpha, goal] = reactive::projected_path_goal(serp, x, d, 0.0);
        const auto o = oracle::scan_max_ball_param(serp, x, d);
        REQUIRE(o.has_value());
        CHECK(alpha == doctest::Approx(*o).epsilon(2e-5));
        CHECK((goal - serp.eval(alpha)).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("holonomic law") {
    const auto region = ConvexRegion::disk_region({0, 0}, 5.0);
    SUBCASE("goal inside the region") {
        const Vec2 u = reactive::holonomic_law({0, 0}, region, {1, 0}, 2.0);
        CHECK(u.x == doctest::Approx(2.0));
        CHECK(u.y == doctest::Approx(0.0));
    }
    SUBCASE("stationary at the goal") {
        const Vec2 u = reactive::holonomic_law({1, 1}, region, {1, 1}, 2.0);
        CHECK(u.norm() == doctest::Approx(0.0));
    }
    SUBCASE("goal outside: the commanded target stays in the region") {
        oracle::Rng rng(5);
        for (int i = 0; i < 30; ++i) {
            const Vec2 x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const Vec2 goal{rng.uniform(-12, 12), rng.uniform(-12, 12)};
            const double k = 2.0;
            const Vec2 u = reactive::holonomic_law(x, region, goal, k);
            const Vec2 target = x + u / k;  // the projected goal itself
            CHECK(region.contains(target, 1e-7));
        }
    }
}

TEST_CASE("wall direction choice") {
    CHECK(reactive::choose_wall_direction({0, 1}, {0.1, 0.995}) == 1);
    CHECK(reactive::choose_wall_direction({0, 1}, {0, -1}) == -1);
    CHECK(reactive::choose_wall_direction({0, 1}, {1, 0}) == 1);  // orthogonal counts as CCW
}

TEST_CASE("wall goal point") {
    const Vec2 x_offset{-0.05, 0};
    const Vec2 n{1, 0};
    const Vec2 t{0, 1};
    SUBCASE("CCW") {
        const Vec2 p = reactive::wall_goal(x_offset, n, t, 0.1, 1);
        CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(p.y == doctest::Approx(0.0866025403784).epsilon(1e-9));
    }
    SUBCASE("CW flips the tangential offset") {
        const Vec2 p = reactive::wall_goal(x_offset, n, t, 0.1, -1);
        CHECK(p.y == doctest::Approx(-0.0866025403784).epsilon(1e-9));
    }
    SUBCASE("the goal sits on the offset-disk boundary") {
        oracle::Rng rng(17);
        for (int i = 0; i < 50; ++i) {
            const Vec2 nn = geom::unit_from_angle(rng.uniform(-kPi, kPi));
            const Vec2 tt = geom::perp(nn);
            const Vec2 off{rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const double eps = rng.uniform(0.01, 0.5);
            const int a = rng.pick(0, 1) ? 1 : -1;
            const Vec2 p = reactive::wall_goal(off, nn, tt, eps, a);
            CHECK((p - off).norm() == doctest::Approx(eps).epsilon(1e-12));
        }
    }
}

TEST_CASE("wall following law") {
    const auto frame_at = [](Vec2 x, double d) {
        sensing::WallFrame f;
        f.normal = {0, 1};  // wall below
        f.tangent = geom::perp(f.normal);
        f.distance = d;
        f.offset_point = x - f.normal * d;
        return f;
    };
    const double eps = 0.1, k = 2.0;
    const Vec2 x{1, 1};
    SUBCASE("mid-band: command parallel to the wall tangent") {
        const auto f = frame_at(x, eps / 2);
        const Vec2 u = reactive::wall_following_law(x, f, eps, 1, k);
        CHECK(u.dot(f.normal) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("band edge: inward normal component") {
        const auto f = frame_at(x, eps);
        const Vec2 u = reactive::wall_following_law(x, f, eps, 1, k);
        CHECK(u.dot(f.normal) == doctest::Approx(-k * eps / 2).epsilon(1e-12));
    }
    SUBCASE("tangential progress rate is k a eps sqrt(3)/2") {
        oracle::Rng rng(23);
        for (int i = 0; i < 100; ++i) {
            sensing::WallFrame f;
            f.normal = geom::unit_from_angle(rng.uniform(-kPi, kPi));
            f.tangent = geom::perp(f.normal);
            f.distance = rng.uniform(0.0, 0.5);
            const Vec2 xx{rng.uniform(-5, 5), rng.uniform(-5, 5)};
            f.offset_point = xx - f.normal * f.distance;
            const double e = rng.uniform(0.01, 0.5);
            const double kk = rng.uniform(0.5, 4.0);
            const int a = rng.pick(0, 1) ? 1 : -1;
            const Vec2 u = reactive::wall_following_law(xx, f, e, a, kk);
            CHECK(u.dot(f.tangent) == doctest::Approx(kk * a * e * std::sqrt(3.0) / 2).epsilon(1e-12));
        }
    }
}

TEST_CASE("unicycle law") {
    const auto region = ConvexRegion::disk_region({0, 0}, 10.0);
    const double k = 2.0;
    SUBCASE("goal dead ahead") {
        const auto c = reactive::unicycle_law({0, 0}, 0.0, region, region, region, {1, 0}, k);
        CHECK(c.v == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(c.omega == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("goal directly behind clamps the speed") {
        const auto c = reactive::unicycle_law({0, 0}, 0.0, region, region, region, {-1, 0}, k);
        CHECK(c.v == doctest::Approx(0.0));
    }
    SUBCASE("goal 90 degrees left turns left") {
        const auto c = reactive::unicycle_law({0, 0}, 0.0, region, region, region, {0, 1}, k);
        CHECK(c.v == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.omega == doctest::Approx(k * kPi / 2).epsilon(1e-12));
    }
    SUBCASE("forward speed respects the free slice") {
        // Free interval ahead is only 0.4 long; the goal sits 2.0 ahead.
        ConvexRegion slab;
        slab.add_halfplane({{-1, 0}, {0.4, 0}});  // x <= 0.4
        slab.add_halfplane({{1, 0}, {-5, 0}});
        slab.add_halfplane({{0, 1}, {0, -5}});
        slab.add_halfplane({{0, -1}, {0, 5}});
        const auto c = reactive::unicycle_law({0, 0}, 0.0, slab, slab, slab, {2, 0}, k);
        CHECK(c.v == doctest::Approx(k * 0.4).epsilon(1e-9));
    }
}

TEST_CASE("navigate step mode automaton") {
    const double r = 0.25;
    auto s = scenarios::empty_square(20.0, 5.0);
    s.params.eps = 0.3;
    reactive::NavParams params;
    params.k = 2.0;
    params.eps = 0.3;
    params.delta = 0.01;
    params.body_radius = r;
    params.holonomic = true;

    SUBCASE("clear surroundings stay in path following") {
        const auto state = world::WorldState::initial(s);
        const auto scan = sensing::lidar_scan(s, state, {10, 10});
        world::RobotState robot;
        robot.x = {10, 10};
        const auto path = RefPath::line({10, 10}, {15, 10});
        const auto ns = reactive::navigate_step(robot, path, scan, {}, params);
        CHECK(ns.mode.mode == reactive::Mode::path_following);
        CHECK(!ns.wall_active);
        CHECK(ns.command.u.x > 0.0);
    }
    SUBCASE("entering the danger band switches to wall following and saves the index") {
        auto s2 = s;
        s2.obstacles.push_back(scenarios::disk_obstacle(1, {11.0, 10}, 0.5));
        const auto state = world::WorldState::initial(s2);
        const auto scan = sensing::lidar_scan(s2, state, {10, 10});  // d = 0.25 < eps
        world::RobotState robot;
        robot.x = {10, 10};
        const auto path = RefPath::line({10, 10}, {15, 10});
        const auto ns = reactive::navigate_step(robot, path, scan, {}, params);
        CHECK(ns.mode.mode == reactive::Mode::wall_following);
        CHECK(ns.mode.alpha_saved == doctest::Approx(ns.alpha));
        CHECK((ns.mode.direction == 1 || ns.mode.direction == -1));
    }
    SUBCASE("passing the saved index restores path following") {
        auto s2 = s;
        s2.obstacles.push_back(scenarios::disk_obstacle(1, {10.0, 9.45}, 0.5));  // below the robot
        const auto state = world::WorldState::initial(s2);
        const auto scan = sensing::lidar_scan(s2, state, {10, 10});
        world::RobotState robot;
        robot.x = {10, 10};
        const auto path = RefPath::line({8, 10}, {15, 10});
        reactive::NavMode mode;
        mode.mode = reactive::Mode::wall_following;
        mode.alpha_saved = 0.05;  // already passed: d-ball sees alpha ~ 0.28+
        mode.direction = 1;
        mode.alpha_last = 0.05;
        const auto ns = reactive::navigate_step(robot, path, scan, mode, params);
        CHECK(ns.alpha > 0.05);
        CHECK(ns.mode.mode == reactive::Mode::path_following);
        CHECK(ns.wall_active);  // the exiting evaluation still commands the wall goal
    }
}

TEST_CASE("wall goal lies on the wall-following region boundary") {
    // Curved-obstacle, mid-band configuration: the offset-disk face is active.
    auto s = scenarios::empty_square(20.0, 5.0);
    const double r = 0.25, eps = 0.2, d = 0.75 * eps;
    s.obstacles.push_back(scenarios::disk_obstacle(1, {10 + d + r + 0.5, 10}, 0.5));
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    const auto wf = sensing::wall_following_free_space(scan, r, eps);
    for (int a : {1, -1}) {
        const Vec2 xp = reactive::wall_goal(wf.frame.offset_point, wf.frame.normal, wf.frame.tangent,
                                            eps, a);
        CHECK(std::abs(wf.region.boundary_clearance(xp)) <= 1e-6);
    }
}
