#pragma once
/**
 * @file geometry.hpp
 * @brief Planar primitives: vectors, convex regions (half-planes and a disk),
 *        metric projections, and piecewise line/arc reference paths.
 */

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "warebot/errors.hpp"

namespace warebot::geom {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(Vec2 r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(Vec2 r) { x -= r.x; y -= r.y; return *this; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }

    /// Unit vector in the same direction; {0,0} when shorter than eps.
    Vec2 normalized(double eps = 1e-15) const {
        const double n = norm();
        if (n <= eps) return {0.0, 0.0};
        return {x / n, y / n};
    }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Rotation by +90 degrees (the J matrix): (x,y) -> (-y,x).
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline double bearing(Vec2 v) { return std::atan2(v.y, v.x); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

// ---- Distance helpers shared across modules ----

Vec2 closest_point_segment(Vec2 p, Vec2 a, Vec2 b);
double dist_point_segment(Vec2 p, Vec2 a, Vec2 b);
double dist_segment_segment(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

/// Crossing-number point-in-polygon test; boundary points count as inside.
bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly);
double polygon_boundary_distance(Vec2 p, const std::vector<Vec2>& poly);
/// Positive outside the solid polygon, negative (minus depth) inside.
double signed_distance_polygon(Vec2 p, const std::vector<Vec2>& poly);
double polygon_area_signed(const std::vector<Vec2>& poly);
bool polygon_is_simple(const std::vector<Vec2>& poly);

/// First nonnegative ray parameter hitting segment [a,b], if any.
std::optional<double> raycast_segment(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b);
/// First nonnegative ray parameter hitting the circle boundary, if any.
std::optional<double> raycast_circle(Vec2 origin, Vec2 dir, Vec2 center, double radius);

// ---- Convex regions ----

/// Closed half-plane {p : (p - anchor) . normal >= 0}. The normal is unit length.
struct HalfPlane {
    Vec2 normal;
    Vec2 anchor;

    double slack(Vec2 p) const { return (p - anchor).dot(normal); }
    bool contains(Vec2 p, double tol = 0.0) const { return slack(p) >= -tol; }
};

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

/**
 * Intersection of half-planes and at most one disk. The empty constructor
 * denotes the whole plane. Projection uses Dykstra's cyclic scheme
 * (tolerance 1e-10, iteration cap 10000); emptiness is decided exactly by
 * polygon clipping.
 */
class ConvexRegion {
  public:
    ConvexRegion() = default;

    static ConvexRegion disk_region(Vec2 center, double radius);

    void add_halfplane(const HalfPlane& hp) { halfplanes_.push_back(hp); }
    /// Restrict by a disk. At most one disk is supported.
    void set_disk(const Disk& d);

    const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
    const std::optional<Disk>& disk() const { return disk_; }

    bool contains(Vec2 p, double tol = 1e-9) const;

    /// Minimum constraint slack at p; for interior points this is the
    /// distance to the region boundary, negative outside.
    double boundary_clearance(Vec2 p) const;

    bool empty() const;

    /// Metric projection onto the region. Throws EmptyRegion.
    Vec2 project(Vec2 q) const;

    /// Parameter interval [lo,hi] with point + s*dir inside the region.
    /// dir must be unit length. Throws EmptyRegion if the line misses it.
    std::pair<double, double> line_slice(Vec2 point, Vec2 dir) const;

  private:
    std::vector<HalfPlane> halfplanes_;
    std::optional<Disk> disk_;
};

// ---- Reference paths ----

struct LineSegment {
    Vec2 a;
    Vec2 b;
};

/// Circular arc from start_angle through start_angle + sweep (CCW positive).
struct ArcSegment {
    Vec2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;
};

using PathSegment = std::variant<LineSegment, ArcSegment>;

/**
 * Piecewise continuously differentiable path parametrized by normalized
 * arclength alpha in [0,1]. Segments must chain continuously. Tangents at
 * segment breakpoints take the right limit (the upcoming segment).
 */
class RefPath {
  public:
    RefPath() = default;
    explicit RefPath(std::vector<PathSegment> segments);

    static RefPath line(Vec2 a, Vec2 b);
    static RefPath polyline(const std::vector<Vec2>& pts);
    static RefPath point(Vec2 p);

    /// Point at normalized arclength alpha. Throws DomainError outside [0,1].
    Vec2 eval(double alpha) const;

    /// Unit tangent at alpha (right limit at breakpoints).
    Vec2 tangent(double alpha) const;

    /// The subpath over [0, alpha] reparametrized to [0,1].
    /// Throws DomainError unless 0 < alpha <= 1.
    RefPath truncate(double alpha) const;

    /// max{alpha : ||P(alpha) - center|| <= radius}, or nullopt if the ball
    /// misses the path entirely.
    std::optional<double> max_ball_param(Vec2 center, double radius) const;
    /// min-variant of max_ball_param.
    std::optional<double> min_ball_param(Vec2 center, double radius) const;

    double length() const { return total_length_; }
    Vec2 start() const;
    Vec2 end() const;
    bool degenerate() const { return total_length_ <= 0.0; }
    const std::vector<PathSegment>& segments() const { return segments_; }

  private:
    struct Location {
        std::size_t index;
        double t;  // local parameter in [0,1] within the segment
    };
    Location locate(double alpha) const;
    Location locate_right(double alpha) const;

    std::vector<PathSegment> segments_;
    std::vector<double> cumulative_;  // cumulative_[i] = length before segment i
    double total_length_ = 0.0;
    Vec2 degenerate_point_;
};

double segment_length(const PathSegment& s);
Vec2 segment_eval(const PathSegment& s, double t);
Vec2 segment_tangent(const PathSegment& s, double t);

}  // namespace warebot::geom
