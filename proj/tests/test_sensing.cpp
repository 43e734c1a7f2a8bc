#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "support/oracles.hpp"
#include "support/scenarios.hpp"
#include "warebot/sensing.hpp"

using namespace warebot;
using geom::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t ray_at_angle(const sensing::Scan& scan, double theta) {
    std::size_t best = 0;
    double best_err = 1e9;
    for (std::size_t j = 0; j < scan.size(); ++j) {
        const double err = std::abs(geom::wrap_angle(scan.angles[j] - theta));
        if (err < best_err) {
            best_err = err;
            best = j;
        }
    }
    REQUIRE(best_err < 1e-9);  // the grid must contain the requested bearing
    return best;
}

}  // namespace

TEST_CASE("empty workspace scan saturates at the range limit") {
    const auto s = scenarios::empty_square(20.0, 5.0);
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    for (double r : scan.ranges) CHECK(r == doctest::Approx(5.0));
    for (const auto& h : scan.hits) CHECK(h.kind == sensing::RayHit::Kind::none);
}

TEST_CASE("ray toward a disk obstacle reports the surface distance") {
    auto s = scenarios::empty_square(20.0, 5.0);
    s.obstacles.push_back(scenarios::disk_obstacle(7, {12, 10}, 0.5));
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    const auto j = ray_at_angle(scan, 0.0);
    CHECK(scan.ranges[j] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(scan.hits[j].kind == sensing::RayHit::Kind::obstacle);
    CHECK(scan.hits[j].id == 7);
}

TEST_CASE("occluding obstacles match the membership-bisection oracle") {
    auto s = scenarios::empty_square(20.0, 8.0);
    s.obstacles.push_back(scenarios::box_obstacle(1, 12, 9, 13.5, 11.5));
    s.obstacles.push_back(scenarios::disk_obstacle(2, {15, 10}, 1.0));  // partially occluded
    const auto state = world::WorldState::initial(s);
    const Vec2 x{9, 10};
    const auto scan = sensing::lidar_scan(s, state, x);
    const oracle::Occupancy occ{&s, &state, std::nullopt};
    for (std::size_t j = 0; j < scan.size(); j += 7) {
        const double expected =
            oracle::bisect_ray_range(occ, x, geom::unit_from_angle(scan.angles[j]), 8.0);
        if (expected >= 8.0 - 1e-9) {
            CHECK(scan.ranges[j] == doctest::Approx(8.0));
        } else {
            CHECK(scan.ranges[j] == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("scan ranges are invariant under ray refinement at shared bearings") {
    auto s = scenarios::empty_square(20.0, 6.0);
    s.obstacles.push_back(scenarios::disk_obstacle(1, {13, 11}, 0.8));
    s.obstacles.push_back(scenarios::box_obstacle(2, 7, 7, 8.5, 9));
    auto state = world::WorldState::initial(s);

    s.params.rays = 180;
    const auto coarse = sensing::lidar_scan(s, state, {10, 10});
    s.params.rays = 360;
    const auto fine = sensing::lidar_scan(s, state, {10, 10});
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        // Bearing j of the N-grid appears at index 2j+1 of the 2N-grid.
        CHECK(coarse.angles[j] == doctest::Approx(fine.angles[2 * j + 1]).epsilon(1e-15));
        CHECK(coarse.ranges[j] == fine.ranges[2 * j + 1]);
    }
}

TEST_CASE("boundary distance erodes by the body radius") {
    auto s = scenarios::empty_square(20.0, 5.0);
    s.obstacles.push_back(scenarios::disk_obstacle(1, {12, 10}, 0.5));
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    CHECK(sensing::boundary_distance(scan, 0.25) == doctest::Approx(1.25).epsilon(1e-12));

    const auto empty = sensing::lidar_scan(scenarios::empty_square(20.0, 5.0), state, {10, 10});
    CHECK(sensing::boundary_distance(empty, 0.25) == doctest::Approx(4.75));
}

TEST_CASE("scan recentering") {
    // Hand-built scan at the origin: range 2 ahead, range 1 behind, rest at R.
    const auto s = scenarios::empty_square(40.0, 5.0);
    const auto state = world::WorldState::initial(s);
    auto scan = sensing::lidar_scan(s, state, {20, 20});
    for (auto& r : scan.ranges) r = 5.0;
    const auto fwd = ray_at_angle(scan, 0.0);
    const auto bwd = ray_at_angle(scan, kPi);
    scan.ranges[fwd] = 2.0;
    scan.ranges[bwd] = 1.0;

    const auto centered = sensing::recenter_scan(scan, 0.0, 0.5);
    CHECK(centered.origin.x == doctest::Approx(20.5));
    CHECK(centered.origin.y == doctest::Approx(20.0));
    CHECK(centered.range_limit == doctest::Approx(4.5));

    SUBCASE("sample ahead lands at the reduced distance") {
        const auto j = ray_at_angle(centered, 0.0);
        CHECK(centered.ranges[j] == doctest::Approx(1.5).epsilon(1e-9));
    }
    SUBCASE("sample behind lands farther away") {
        const auto j = ray_at_angle(centered, kPi);
        CHECK(centered.ranges[j] == doctest::Approx(1.5).epsilon(1e-9));
    }
    SUBCASE("saturated scans collapse to the reduced range limit") {
        auto all_far = scan;
        for (auto& r : all_far.ranges) r = 5.0;
        const auto c = sensing::recenter_scan(all_far, 0.0, 0.5);
        for (double r : c.ranges) CHECK(r == doctest::Approx(4.5).epsilon(1e-9));
    }
    SUBCASE("zero-radius recentering preserves ranges") {
        const auto c = sensing::recenter_scan(scan, 0.3, 0.0);
        for (std::size_t j = 0; j < scan.size(); ++j) {
            CHECK(c.ranges[j] == doctest::Approx(scan.ranges[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("local free space") {
    auto s = scenarios::empty_square(20.0, 5.0);
    const auto state = world::WorldState::initial(s);

    SUBCASE("no obstacle in range: a pure disk of half the eroded range") {
        const auto scan = sensing::lidar_scan(s, state, {10, 10});
        const auto region = sensing::local_free_space(scan, 0.25);
        CHECK(region.halfplanes().empty());
        REQUIRE(region.disk().has_value());
        CHECK(region.disk()->radius == doctest::Approx(0.5 * (5.0 - 0.25)));
    }
    SUBCASE("origin distance to the boundary is half the eroded minimum range") {
        auto s2 = s;
        s2.obstacles.push_back(scenarios::disk_obstacle(1, {12, 10}, 0.5));
        const auto state2 = world::WorldState::initial(s2);
        const auto scan = sensing::lidar_scan(s2, state2, {10, 10});
        const auto region = sensing::local_free_space(scan, 0.25);
        const double expected = 0.5 * (1.5 - 0.25);
        CHECK(region.boundary_clearance({10, 10}) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("two obstacles shrink the region to the intersection") {
        auto s2 = s;
        s2.obstacles.push_back(scenarios::disk_obstacle(1, {12, 10}, 0.5));
        auto s3 = s2;
        s3.obstacles.push_back(scenarios::disk_obstacle(2, {10, 12.5}, 0.6));
        const auto st2 = world::WorldState::initial(s2);
        const auto st3 = world::WorldState::initial(s3);
        const auto r2 = sensing::local_free_space(sensing::lidar_scan(s2, st2, {10, 10}), 0.25);
        const auto r3 = sensing::local_free_space(sensing::lidar_scan(s3, st3, {10, 10}), 0.25);
        oracle::Rng rng(99);
        for (int i = 0; i < 2000; ++i) {
            const Vec2 p{rng.uniform(7, 13), rng.uniform(7, 13)};
            if (r3.contains(p, 0.0)) CHECK(r2.contains(p, 1e-9));
        }
    }
    SUBCASE("penetration is degenerate") {
        auto s2 = s;
        s2.obstacles.push_back(scenarios::disk_obstacle(1, {10.6, 10}, 0.5));  // 0.1 from center
        const auto state2 = world::WorldState::initial(s2);
        const auto scan = sensing::lidar_scan(s2, state2, {10, 10});
        CHECK_THROWS_AS(sensing::local_free_space(scan, 0.25), Degenerate);
    }
}

TEST_CASE("local free space is contained in the true eroded free space") {
    auto s = scenarios::empty_square(20.0, 5.0);
    s.obstacles.push_back(scenarios::disk_obstacle(1, {12.2, 10.4}, 0.7));
    s.obstacles.push_back(scenarios::box_obstacle(2, 8, 12, 10.5, 13.5));
    const auto state = world::WorldState::initial(s);
    const double body = 0.25;
    const auto scan = sensing::lidar_scan(s, state, {10.5, 10});
    const auto region = sensing::local_free_space(scan, body);

    // With N = 360 the angular gaps admit a small containment defect.
    const double gap_bound = 5.0 * (2 * kPi / 360.0) * (2 * kPi / 360.0) * 5.0;
    world::WorldState st = state;
    st.robot.x = {10.5, 10};
    oracle::Rng rng(4242);
    for (int i = 0; i < 4000; ++i) {
        const Vec2 p{rng.uniform(8, 13), rng.uniform(8, 13)};
        if (!region.contains(p, 0.0)) continue;
        st.robot.x = p;
        const double clearance = world::collision_clearance(s, st) + body - 0.25;  // body == r here
        CHECK(clearance >= -gap_bound);
    }
}

TEST_CASE("wall following free space") {
    // Obstacle behind the origin (bearing pi) with eroded distance 0.05.
    auto s = scenarios::empty_square(20.0, 5.0);
    const double r = 0.25;
    s.obstacles.push_back(scenarios::disk_obstacle(1, {10 - (0.05 + r) - 2.0, 10}, 2.0));
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    const double eps = 0.1;

    const auto wf = sensing::wall_following_free_space(scan, r, eps);
    CHECK(wf.frame.normal.x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(wf.frame.normal.y == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(wf.frame.tangent.x == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(wf.frame.tangent.y == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(wf.frame.offset_point.x == doctest::Approx(10 - 0.05).epsilon(1e-6));
    CHECK(wf.frame.offset_point.y == doctest::Approx(10.0).epsilon(1e-6));

    SUBCASE("origin lies in the interior") {
        CHECK(wf.region.boundary_clearance({10, 10}) > 0.0);
    }
    SUBCASE("not triggered outside the danger band") {
        CHECK_THROWS_AS(sensing::wall_following_free_space(scan, r, 0.02), NotInDangerZone);
    }
}

TEST_CASE("separated worlds reduce the wall region to offset disk and one half-plane") {
    // Mid-band configuration against a small disk: the construction matches
    // the offset-disk/single-half-plane intersection away from a thin
    // discretization buffer near the region boundary.
    auto s = scenarios::empty_square(20.0, 5.0);
    const double r = 0.25;
    const double eps = 0.2;
    const double d = 0.75 * eps;
    s.obstacles.push_back(scenarios::disk_obstacle(1, {10 + d + r + 0.5, 10}, 0.5));
    const auto state = world::WorldState::initial(s);
    const auto scan = sensing::lidar_scan(s, state, {10, 10});
    const auto wf = sensing::wall_following_free_space(scan, r, eps);

    const Vec2 x{10, 10};
    const geom::HalfPlane h{wf.frame.normal, x - wf.frame.normal * (0.5 * wf.frame.distance)};
    const geom::Disk dw{wf.frame.offset_point, eps};
    oracle::Rng rng(31);
    const double buffer = 8e-3;
    for (int i = 0; i < 4000; ++i) {
        const Vec2 p{rng.uniform(9.5, 10.8), rng.uniform(9.5, 10.5)};
        const double slack_ref =
            std::min(h.slack(p), dw.radius - (p - dw.center).norm());
        if (slack_ref > buffer) CHECK(wf.region.contains(p, 1e-9));
        if (slack_ref < -buffer) CHECK(!wf.region.contains(p, 0.0));
    }
}
