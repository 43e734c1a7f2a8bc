#pragma once
/**
 * @file world.hpp
 * @brief Scenario model: workspace, obstacles, movable objects, robot state,
 *        standing-assumption validation and the ground-truth clearance monitor.
 */

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "warebot/geometry.hpp"

namespace warebot::world {

using geom::Vec2;

/// Simple CCW polygon bounding the reachable area.
struct Workspace {
    std::vector<Vec2> boundary;

    bool contains(Vec2 p) const { return geom::point_in_polygon(p, boundary); }
    double boundary_distance(Vec2 p) const { return geom::polygon_boundary_distance(p, boundary); }
    /// Positive inside, negative outside (distance to the boundary polyline).
    double interior_clearance(Vec2 p) const {
        const double d = boundary_distance(p);
        return contains(p) ? d : -d;
    }
};

struct DiskShape {
    Vec2 center;
    double radius = 0.0;
};

struct PolygonShape {
    std::vector<Vec2> vertices;  // CCW, convex
};

struct Obstacle {
    int id = 0;
    bool known = false;  // known obstacles are visible to the deliberative planner
    std::variant<DiskShape, PolygonShape> shape;
};

struct MovableObject {
    int id = 0;
    Vec2 start;
    double radius = 0.0;
    Vec2 goal;
};

struct RobotState {
    Vec2 x;
    double psi = 0.0;  // wrapped to (-pi, pi]
    bool gripper = false;
    std::optional<int> grasped;  // object id, set iff gripper engaged
};

struct SimParams {
    double k = 2.0;
    double delta = 0.01;
    double h = 0.005;
    int rays = 360;
    std::optional<double> eps;  // wall-following trigger; derived from eta when absent
    std::optional<Vec2> nest;
    long max_steps = 10'000'000;
    bool holonomic = false;
};

struct Scenario {
    Workspace workspace;
    std::vector<Obstacle> obstacles;
    std::vector<MovableObject> objects;
    double robot_radius = 0.25;
    Vec2 robot_start;
    double robot_psi = 0.0;
    double lidar_range = 5.0;
    SimParams params;

    double max_object_radius() const;
    /// Effective wall-following trigger: explicit override or the derived default.
    double epsilon() const;
    const MovableObject* object_by_id(int id) const;
};

/// Live poses: robot plus current object centers (indexed like Scenario::objects).
struct WorldState {
    RobotState robot;
    std::vector<Vec2> object_centers;

    static WorldState initial(const Scenario& s);
};

/// Minimum clearance among obstacle pairs and obstacle-to-boundary distances;
/// +infinity when fewer than one obstacle contributes.
double compute_eta(const Scenario& s);

/// Upper bound for a valid wall-following trigger: (eta - 2(r + max rho)) / 2.
double epsilon_bound(const Scenario& s);

struct CheckItem {
    std::string name;
    bool ok = true;
    double margin = 0.0;
    std::string detail;
};

struct ValidationReport {
    double eta = 0.0;
    double eps = 0.0;
    double eps_bound = 0.0;
    std::vector<CheckItem> checks;

    bool all_ok() const;
};

/// Checks the separation and goal-admissibility assumptions plus the trigger
/// bound. Violations are warnings; geometric invalidity throws MalformedScenario.
ValidationReport validate_assumptions(const Scenario& s);

/// Exact signed clearance of the robot disk (and the grasped object disk, if
/// any) against walls, obstacles, and non-grasped objects. Negative means
/// penetration.
double collision_clearance(const Scenario& s, const WorldState& state);

}  // namespace warebot::world
