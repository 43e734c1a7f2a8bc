#include "warebot/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace warebot::sensing {

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidate {
    double angle;
    double range;
    RayHit hit;
};

}  // namespace

std::size_t Scan::min_index() const {
    return static_cast<std::size_t>(std::min_element(ranges.begin(), ranges.end()) - ranges.begin());
}

std::vector<double> scan_angles(int n) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        a[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * (j + 1) / n;
    }
    return a;
}

Scan lidar_scan(const world::Scenario& s, const world::WorldState& state, Vec2 x) {
    if (!s.workspace.contains(x)) throw OutsideWorkspace("lidar_scan: origin outside workspace");

    Scan scan;
    scan.origin = x;
    scan.range_limit = s.lidar_range;
    scan.angles = scan_angles(s.params.rays);
    scan.ranges.assign(scan.angles.size(), s.lidar_range);
    scan.hits.assign(scan.angles.size(), RayHit{});

    // Range culling: collect only primitives that can be hit within R.
    const double R = s.lidar_range;
    struct CirclePrim { Vec2 c; double r; RayHit hit; };
    struct SegmentPrim { Vec2 a, b; RayHit hit; };
    std::vector<CirclePrim> circles;
    std::vector<SegmentPrim> segments;

    const auto& wb = s.workspace.boundary;
    for (std::size_t i = 0, j = wb.size() - 1; i < wb.size(); j = i++) {
        if (geom::dist_point_segment(x, wb[j], wb[i]) <= R) {
            segments.push_back({wb[j], wb[i], {RayHit::Kind::wall, 0}});
        }
    }
    for (const auto& o : s.obstacles) {
        const RayHit hit{RayHit::Kind::obstacle, o.id};
        if (std::holds_alternative<world::DiskShape>(o.shape)) {
            const auto& d = std::get<world::DiskShape>(o.shape);
            if ((x - d.center).norm() - d.radius <= R) circles.push_back({d.center, d.radius, hit});
        } else {
            const auto& v = std::get<world::PolygonShape>(o.shape).vertices;
            for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
                if (geom::dist_point_segment(x, v[j], v[i]) <= R) segments.push_back({v[j], v[i], hit});
            }
        }
    }
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        if (state.robot.grasped && s.objects[i].id == *state.robot.grasped) continue;
        const Vec2 c = state.object_centers[i];
        if ((x - c).norm() - s.objects[i].radius <= R) {
            circles.push_back({c, s.objects[i].radius, {RayHit::Kind::object, s.objects[i].id}});
        }
    }

    for (std::size_t j = 0; j < scan.angles.size(); ++j) {
        const Vec2 dir = geom::unit_from_angle(scan.angles[j]);
        double best = R;
        RayHit hit{};
        for (const auto& seg : segments) {
            if (auto t = geom::raycast_segment(x, dir, seg.a, seg.b); t && *t < best) {
                best = *t;
                hit = seg.hit;
            }
        }
        for (const auto& c : circles) {
            if (auto t = geom::raycast_circle(x, dir, c.c, c.r); t && *t < best) {
                best = *t;
                hit = c.hit;
            }
        }
        scan.ranges[j] = best;
        scan.hits[j] = hit;
    }
    return scan;
}

double boundary_distance(const Scan& scan, double body_radius) {
    return scan.min_range() - body_radius;
}

Scan recenter_scan(const Scan& scan, double psi, double rho) {
    const Vec2 new_origin = scan.origin + geom::unit_from_angle(psi) * rho;
    const double new_limit = scan.range_limit - rho;

    Scan out;
    out.origin = new_origin;
    out.range_limit = new_limit;
    out.angles = scan.angles;
    out.ranges.assign(scan.size(), new_limit);
    out.hits.assign(scan.size(), RayHit{});

    std::vector<Candidate> cands;
    cands.reserve(scan.size());
    for (std::size_t j = 0; j < scan.size(); ++j) {
        const Vec2 sample = scan.origin + geom::unit_from_angle(scan.angles[j]) * scan.ranges[j];
        const Vec2 rel = sample - new_origin;
        const double dist = rel.norm();
        Candidate c;
        c.angle = geom::bearing(rel);
        if (dist < new_limit) {
            c.range = dist;
            c.hit = scan.hits[j];
        } else {
            c.range = new_limit;  // nothing observable closer than the clamp
            c.hit = RayHit{};
        }
        cands.push_back(c);
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.angle < b.angle; });

    // Conservative re-binning: each uniform bearing takes the smaller of the
    // two bracketing candidates (circularly).
    const std::size_t m = cands.size();
    for (std::size_t j = 0; j < out.angles.size(); ++j) {
        const double theta = out.angles[j];
        auto it = std::lower_bound(cands.begin(), cands.end(), theta,
                                   [](const Candidate& c, double v) { return c.angle < v; });
        const std::size_t hi = (it == cands.end()) ? 0 : static_cast<std::size_t>(it - cands.begin());
        const std::size_t lo = (hi + m - 1) % m;
        const Candidate& pick = (cands[lo].range <= cands[hi].range) ? cands[lo] : cands[hi];
        out.ranges[j] = std::clamp(pick.range, 0.0, new_limit);
        out.hits[j] = (out.ranges[j] < new_limit) ? pick.hit : RayHit{};
    }
    return out;
}

geom::ConvexRegion local_free_space(const Scan& scan, double body_radius) {
    if (boundary_distance(scan, body_radius) < 0.0) {
        throw Degenerate("local_free_space: eroded clearance is negative");
    }
    geom::ConvexRegion region;
    for (std::size_t j = 0; j < scan.size(); ++j) {
        if (scan.ranges[j] >= scan.range_limit) continue;  // unsensed: bounded by the disk below
        const Vec2 dir = geom::unit_from_angle(scan.angles[j]);
        const Vec2 anchor = scan.origin + dir * (0.5 * (scan.ranges[j] - body_radius));
        region.add_halfplane({-dir, anchor});
    }
    region.set_disk({scan.origin, 0.5 * (scan.range_limit - body_radius)});
    return region;
}

WallFrame wall_frame(const Scan& scan, double body_radius) {
    const std::size_t m = scan.min_index();
    WallFrame f;
    f.normal = -geom::unit_from_angle(scan.angles[m]);
    f.tangent = geom::perp(f.normal);
    f.distance = scan.ranges[m] - body_radius;
    f.offset_point = scan.origin - f.normal * f.distance;
    f.hit = scan.hits[m];
    return f;
}

WallFollowSpace wall_following_free_space(const Scan& scan, double body_radius, double eps) {
    const double d = boundary_distance(scan, body_radius);
    if (d >= eps) throw NotInDangerZone("wall_following_free_space: clearance not below eps");
    if (d < 0.0) throw Degenerate("wall_following_free_space: negative clearance");

    WallFollowSpace out;
    out.frame = wall_frame(scan, body_radius);

    const double lf_disk_radius = 0.5 * (scan.range_limit - body_radius);
    if (d + eps > lf_disk_radius) {
        // The offset disk must fit inside the sensed horizon for the single-disk
        // region representation to be exact.
        throw Degenerate("wall_following_free_space: sensing range too small for the offset disk");
    }
    geom::ConvexRegion region;
    for (std::size_t j = 0; j < scan.size(); ++j) {
        if (scan.ranges[j] >= scan.range_limit) continue;
        const Vec2 dir = geom::unit_from_angle(scan.angles[j]);
        const Vec2 anchor = scan.origin + dir * (0.5 * (scan.ranges[j] - body_radius));
        region.add_halfplane({-dir, anchor});
    }
    region.set_disk({out.frame.offset_point, eps});
    out.region = std::move(region);
    return out;
}

}  // namespace warebot::sensing
