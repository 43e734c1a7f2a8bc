#pragma once
// Scenario builders shared by the unit and acceptance suites.

#include <cmath>
#include <vector>

#include "warebot/world.hpp"

namespace scenarios {

using warebot::geom::Vec2;
using warebot::world::DiskShape;
using warebot::world::MovableObject;
using warebot::world::Obstacle;
using warebot::world::PolygonShape;
using warebot::world::Scenario;

inline std::vector<Vec2> rectangle(double x0, double y0, double x1, double y1) {
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

inline Scenario empty_square(double side = 20.0, double lidar_range = 5.0) {
    Scenario s;
    s.workspace.boundary = rectangle(0, 0, side, side);
    s.robot_start = {side / 2, side / 2};
    s.robot_psi = 0.0;
    s.robot_radius = 0.25;
    s.lidar_range = lidar_range;
    return s;
}

inline Obstacle disk_obstacle(int id, Vec2 center, double radius, bool known = false) {
    Obstacle o;
    o.id = id;
    o.known = known;
    o.shape = DiskShape{center, radius};
    return o;
}

inline Obstacle box_obstacle(int id, double x0, double y0, double x1, double y1, bool known = false) {
    Obstacle o;
    o.id = id;
    o.known = known;
    o.shape = PolygonShape{rectangle(x0, y0, x1, y1)};
    return o;
}

/// 20x20 m workspace packed with a lattice of disk obstacles whose surface
/// separation (and wall clearance) is exactly 2(r + max rho) + gap. One object
/// must be fetched and pushed to its goal; start, object, and goal sit at
/// lattice cell centers.
inline Scenario packed_disks(double gap = 0.05) {
    Scenario s;
    s.workspace.boundary = rectangle(0, 0, 20, 20);
    s.robot_radius = 0.25;
    s.lidar_range = 5.0;

    const double rho = 0.5;        // object radius (max rho)
    const double obs_radius = 0.5;
    const double sep = 2.0 * (s.robot_radius + rho) + gap;  // required surface separation
    const double pitch = sep + 2.0 * obs_radius;
    const double first = obs_radius + sep;  // wall clearance equals the separation

    int id = 1;
    std::vector<Vec2> centers;
    for (int i = 0;; ++i) {
        const double x = first + i * pitch;
        if (x + obs_radius + sep > 20.0) break;
        centers.push_back({x, 0});
    }
    const int n = static_cast<int>(centers.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s.obstacles.push_back(disk_obstacle(id++, {first + i * pitch, first + j * pitch}, obs_radius));
        }
    }

    const auto cell = [&](int i, int j) {
        return Vec2{first + (i + 0.5) * pitch, first + (j + 0.5) * pitch};
    };
    s.robot_start = cell(0, 0);
    s.robot_psi = 0.0;

    MovableObject obj;
    obj.id = 1;
    obj.radius = rho;
    obj.start = cell(2, 0);
    obj.goal = cell(4, 4);
    s.objects.push_back(obj);
    return s;
}

/// Polygonal workspace with a known interior wall, two unknown obstacles (one
/// with corners), two objects, and a nest point: a five-action task.
inline Scenario walls_two_objects() {
    Scenario s;
    s.workspace.boundary = rectangle(0, 0, 20, 14);
    s.robot_radius = 0.25;
    s.lidar_range = 5.0;

    s.obstacles.push_back(box_obstacle(1, 6.0, 6.8, 14.0, 7.2, /*known=*/true));
    s.obstacles.push_back(box_obstacle(2, 9.3, 2.8, 10.7, 4.2, /*known=*/false));  // corners
    s.obstacles.push_back(disk_obstacle(3, {10.0, 10.5}, 0.7, /*known=*/false));

    MovableObject o1;
    o1.id = 1;
    o1.radius = 0.5;
    o1.start = {3.0, 3.0};
    o1.goal = {17.0, 3.0};
    s.objects.push_back(o1);

    MovableObject o2;
    o2.id = 2;
    o2.radius = 0.4;
    o2.start = {3.0, 11.0};
    o2.goal = {17.0, 11.0};
    s.objects.push_back(o2);

    s.robot_start = {2.5, 7.0};
    s.robot_psi = 0.0;
    s.params.nest = Vec2{2.5, 7.0};
    s.params.eps = 0.3;
    return s;
}

/// Single unknown disk obstacle blocking a straight corridor; used for the
/// wall-following property scenarios.
inline Scenario single_obstacle(Vec2 obstacle_center, double obstacle_radius, Vec2 start, Vec2 goal,
                                bool holonomic, double eps) {
    Scenario s;
    s.workspace.boundary = rectangle(0, 0, 16, 12);
    s.robot_radius = 0.25;
    s.lidar_range = 5.0;
    s.robot_start = start;
    s.robot_psi = warebot::geom::bearing(goal - start);
    s.obstacles.push_back(disk_obstacle(1, obstacle_center, obstacle_radius));
    s.params.holonomic = holonomic;
    s.params.eps = eps;
    (void)goal;
    return s;
}

}  // namespace scenarios
