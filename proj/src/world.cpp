#include "warebot/world.hpp"

#include <algorithm>
#include <cmath>

namespace warebot::world {

namespace {

using geom::cross;

double shape_point_distance(const Obstacle& o, Vec2 p) {
    if (std::holds_alternative<DiskShape>(o.shape)) {
        const auto& d = std::get<DiskShape>(o.shape);
        return (p - d.center).norm() - d.radius;
    }
    return geom::signed_distance_polygon(p, std::get<PolygonShape>(o.shape).vertices);
}

bool convex_polygons_overlap(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    // Separating-axis test over both polygons' edge normals.
    const auto has_separating_axis = [](const std::vector<Vec2>& pa, const std::vector<Vec2>& pb) {
        const std::size_t n = pa.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2 axis = geom::perp(pa[i] - pa[j]);
            double amin = std::numeric_limits<double>::infinity(), amax = -amin;
            for (Vec2 v : pa) {
                const double s = v.dot(axis);
                amin = std::min(amin, s);
                amax = std::max(amax, s);
            }
            double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
            for (Vec2 v : pb) {
                const double s = v.dot(axis);
                bmin = std::min(bmin, s);
                bmax = std::max(bmax, s);
            }
            if (amax < bmin || bmax < amin) return true;
        }
        return false;
    };
    return !has_separating_axis(a, b) && !has_separating_axis(b, a);
}

double polygon_polygon_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (convex_polygons_overlap(a, b)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t na = a.size(), nb = b.size();
    for (std::size_t i = 0, pi = na - 1; i < na; pi = i++) {
        for (std::size_t j = 0, pj = nb - 1; j < nb; pj = j++) {
            best = std::min(best, geom::dist_segment_segment(a[pi], a[i], b[pj], b[j]));
        }
    }
    return best;
}

double disk_polygon_distance(const DiskShape& d, const std::vector<Vec2>& poly) {
    const double sd = geom::signed_distance_polygon(d.center, poly);
    return std::max(0.0, sd - d.radius);
}

/// Clearance between two solid obstacle sets (0 when they touch or overlap).
double obstacle_pair_distance(const Obstacle& a, const Obstacle& b) {
    const bool da = std::holds_alternative<DiskShape>(a.shape);
    const bool db = std::holds_alternative<DiskShape>(b.shape);
    if (da && db) {
        const auto& sa = std::get<DiskShape>(a.shape);
        const auto& sb = std::get<DiskShape>(b.shape);
        return std::max(0.0, (sa.center - sb.center).norm() - sa.radius - sb.radius);
    }
    if (da) return disk_polygon_distance(std::get<DiskShape>(a.shape), std::get<PolygonShape>(b.shape).vertices);
    if (db) return disk_polygon_distance(std::get<DiskShape>(b.shape), std::get<PolygonShape>(a.shape).vertices);
    return polygon_polygon_distance(std::get<PolygonShape>(a.shape).vertices,
                                    std::get<PolygonShape>(b.shape).vertices);
}

double obstacle_boundary_distance(const Obstacle& o, const Workspace& w) {
    const std::size_t n = w.boundary.size();
    double best = std::numeric_limits<double>::infinity();
    if (std::holds_alternative<DiskShape>(o.shape)) {
        const auto& d = std::get<DiskShape>(o.shape);
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            best = std::min(best, geom::dist_point_segment(d.center, w.boundary[j], w.boundary[i]) - d.radius);
        }
        return std::max(0.0, best);
    }
    const auto& verts = std::get<PolygonShape>(o.shape).vertices;
    const std::size_t m = verts.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        for (std::size_t k = 0, pk = m - 1; k < m; pk = k++) {
            best = std::min(best, geom::dist_segment_segment(w.boundary[j], w.boundary[i], verts[pk], verts[k]));
        }
    }
    return std::max(0.0, best);
}

/// Signed clearance of a disk body (center, radius) against everything the
/// robot may hit. `skip_object` excludes the grasped object from the checks.
double body_clearance(const Scenario& s, const WorldState& state, Vec2 center, double radius,
                      std::optional<int> skip_object) {
    double best = s.workspace.interior_clearance(center) - radius;
    for (const Obstacle& o : s.obstacles) {
        best = std::min(best, shape_point_distance(o, center) - radius);
    }
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        if (skip_object && s.objects[i].id == *skip_object) continue;
        const double d = (center - state.object_centers[i]).norm() - s.objects[i].radius - radius;
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

double Scenario::max_object_radius() const {
    double m = 0.0;
    for (const auto& o : objects) m = std::max(m, o.radius);
    return m;
}

double Scenario::epsilon() const {
    if (params.eps) return *params.eps;
    const double bound = epsilon_bound(*this);
    if (!std::isfinite(bound)) return 0.5;
    if (bound <= 0.0) return 0.05;  // assumptions already violated; keep a small band
    return std::min(0.5, 0.9 * bound);
}

const MovableObject* Scenario::object_by_id(int id) const {
    for (const auto& o : objects) {
        if (o.id == id) return &o;
    }
    return nullptr;
}

WorldState WorldState::initial(const Scenario& s) {
    WorldState st;
    st.robot.x = s.robot_start;
    st.robot.psi = geom::wrap_angle(s.robot_psi);
    st.object_centers.reserve(s.objects.size());
    for (const auto& o : s.objects) st.object_centers.push_back(o.start);
    return st;
}

double compute_eta(const Scenario& s) {
    double eta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        for (std::size_t j = i + 1; j < s.obstacles.size(); ++j) {
            eta = std::min(eta, obstacle_pair_distance(s.obstacles[i], s.obstacles[j]));
        }
        eta = std::min(eta, obstacle_boundary_distance(s.obstacles[i], s.workspace));
    }
    return eta;
}

double epsilon_bound(const Scenario& s) {
    const double eta = compute_eta(s);
    if (!std::isfinite(eta)) return std::numeric_limits<double>::infinity();
    return 0.5 * (eta - 2.0 * (s.robot_radius + s.max_object_radius()));
}

bool ValidationReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.ok; });
}

ValidationReport validate_assumptions(const Scenario& s) {
    // Geometric invalidity is an error, not a warning.
    if (s.workspace.boundary.size() < 3) throw MalformedScenario("workspace polygon needs >= 3 vertices");
    if (!geom::polygon_is_simple(s.workspace.boundary)) throw MalformedScenario("workspace polygon is self-intersecting");
    if (geom::polygon_area_signed(s.workspace.boundary) <= 0.0) {
        throw MalformedScenario("workspace polygon must be CCW with positive area");
    }
    if (s.robot_radius <= 0.0) throw MalformedScenario("robot radius must be positive");
    if (s.lidar_range <= s.robot_radius) throw MalformedScenario("lidar range must exceed the robot radius");
    if (!s.workspace.contains(s.robot_start)) throw MalformedScenario("robot start outside workspace");
    for (const auto& o : s.objects) {
        if (o.radius <= 0.0) throw MalformedScenario("object radius must be positive");
        if (!s.workspace.contains(o.start)) throw MalformedScenario("object start outside workspace");
        if (!s.workspace.contains(o.goal)) throw MalformedScenario("object goal outside workspace");
    }
    for (const auto& o : s.obstacles) {
        if (std::holds_alternative<PolygonShape>(o.shape)) {
            const auto& v = std::get<PolygonShape>(o.shape).vertices;
            if (v.size() < 3) throw MalformedScenario("polygon obstacle needs >= 3 vertices");
            if (geom::polygon_area_signed(v) <= 0.0) throw MalformedScenario("polygon obstacle must be CCW");
        } else if (std::get<DiskShape>(o.shape).radius <= 0.0) {
            throw MalformedScenario("disk obstacle radius must be positive");
        }
    }

    ValidationReport rep;
    rep.eta = compute_eta(s);
    rep.eps = s.epsilon();
    rep.eps_bound = epsilon_bound(s);
    const double pack = 2.0 * (s.robot_radius + s.max_object_radius());

    {
        CheckItem c;
        c.name = "obstacle-separation";
        c.ok = rep.eta > pack;
        c.margin = rep.eta - pack;
        c.detail = "eta=" + std::to_string(rep.eta) + " required>" + std::to_string(pack);
        rep.checks.push_back(c);
    }
    for (const auto& o : s.objects) {
        // Distance from the goal point to walls and obstacle sets.
        double clearance = s.workspace.boundary_distance(o.goal);
        for (const auto& ob : s.obstacles) {
            clearance = std::min(clearance, std::max(0.0, shape_point_distance(ob, o.goal)));
        }
        const double required = o.radius + 2.0 * s.robot_radius;
        CheckItem c;
        c.name = "goal-admissible-object-" + std::to_string(o.id);
        c.ok = clearance > required;
        c.margin = clearance - required;
        c.detail = "clearance=" + std::to_string(clearance) + " required>" + std::to_string(required);
        rep.checks.push_back(c);
    }
    {
        CheckItem c;
        c.name = "epsilon-bound";
        c.ok = rep.eps > 0.0 && rep.eps < rep.eps_bound;
        c.margin = rep.eps_bound - rep.eps;
        c.detail = "eps=" + std::to_string(rep.eps) + " bound=" + std::to_string(rep.eps_bound);
        rep.checks.push_back(c);
    }
    return rep;
}

double collision_clearance(const Scenario& s, const WorldState& state) {
    const RobotState& r = state.robot;
    double best = body_clearance(s, state, r.x, s.robot_radius, r.grasped);
    if (r.grasped) {
        const MovableObject* obj = s.object_by_id(*r.grasped);
        if (obj) {
            std::size_t idx = 0;
            for (; idx < s.objects.size(); ++idx) {
                if (s.objects[idx].id == obj->id) break;
            }
            const Vec2 c = state.object_centers[idx];
            best = std::min(best, body_clearance(s, state, c, obj->radius, r.grasped));
        }
    }
    return best;
}

}  // namespace warebot::world
