#pragma once
/**
 * @file sensing.hpp
 * @brief LIDAR simulation, scan re-centering for the grasped-object case, and
 *        the convex local free spaces every controller projects onto.
 *
 * A scan is a polar range curve sampled at N uniformly spaced bearings in
 * (-pi, pi]. The local free space erodes each sensed ray by the body radius
 * and keeps the half-plane through the eroded midpoint, so the distance from
 * the scan origin to the region boundary is half the eroded minimum range.
 */

#include <vector>

#include "warebot/geometry.hpp"
#include "warebot/world.hpp"

namespace warebot::sensing {

using geom::Vec2;

struct RayHit {
    enum class Kind { none, wall, obstacle, object };
    Kind kind = Kind::none;
    int id = -1;

    bool operator==(const RayHit&) const = default;
};

struct Scan {
    Vec2 origin;
    double range_limit = 0.0;          // effective maximum range
    std::vector<double> angles;        // strictly increasing, in (-pi, pi]
    std::vector<double> ranges;        // clipped to [0, range_limit]
    std::vector<RayHit> hits;          // entity sensed per ray (none at range_limit)

    std::size_t size() const { return angles.size(); }
    std::size_t min_index() const;
    double min_range() const { return ranges[min_index()]; }
};

/// Uniform bearing grid used by the simulated sensor: -pi + 2*pi*(j+1)/n.
std::vector<double> scan_angles(int n);

/// Casts n rays from x against walls, obstacles, and non-grasped objects.
/// Throws OutsideWorkspace.
Scan lidar_scan(const world::Scenario& s, const world::WorldState& state, Vec2 x);

/// Sensed distance to the eroded free-space boundary: min range - body radius.
double boundary_distance(const Scan& scan, double body_radius);

/// Re-expresses a scan taken at the robot center as ranges from the
/// circumscribed-circle center x + rho*(cos psi, sin psi). The effective
/// range shrinks to range_limit - rho; re-binned bearings are interpolated
/// conservatively (min of adjacent candidates).
Scan recenter_scan(const Scan& scan, double psi, double rho);

/// Convex region around the scan origin guaranteed collision-free for a body
/// of the given radius: per-ray half-planes through the eroded midpoints,
/// intersected with the disk of radius (range_limit - body)/2.
/// Throws Degenerate when the eroded minimum range is negative.
geom::ConvexRegion local_free_space(const Scan& scan, double body_radius);

/// Wall frame at the minimum-range ray: inward normal, CCW tangent, and the
/// eroded nearest-boundary point.
struct WallFrame {
    Vec2 normal;        // n_w, pointing from the wall toward the scan origin
    Vec2 tangent;       // t_w = J n_w (CCW around the obstacle)
    Vec2 offset_point;  // origin - (min_range - body) * n_w
    double distance;    // min_range - body
    RayHit hit;
};

WallFrame wall_frame(const Scan& scan, double body_radius);

struct WallFollowSpace {
    geom::ConvexRegion region;  // local free space intersected with the offset disk
    WallFrame frame;
};

/// Offset-disk restriction of the local free space used while tracking a wall.
/// Requires 0 < boundary_distance < eps (NotInDangerZone otherwise) and a
/// sensing range large enough to contain the offset disk (Degenerate otherwise).
WallFollowSpace wall_following_free_space(const Scan& scan, double body_radius, double eps);

}  // namespace warebot::sensing
