#include "warebot/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numbers>

namespace warebot::geom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProjectionTol = 1e-10;
constexpr int kProjectionIterationCap = 10000;

Vec2 project_halfplane(const HalfPlane& hp, Vec2 p) {
    const double s = hp.slack(p);
    if (s >= 0.0) return p;
    return p - s * hp.normal;
}

Vec2 project_disk(const Disk& d, Vec2 p) {
    const Vec2 rel = p - d.center;
    const double n = rel.norm();
    if (n <= d.radius) return p;
    return d.center + rel * (d.radius / n);
}

// Sutherland-Hodgman clip of a convex polygon by one half-plane.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const HalfPlane& hp) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = poly[i];
        const Vec2 nxt = poly[(i + 1) % n];
        const double sc = hp.slack(cur);
        const double sn = hp.slack(nxt);
        if (sc >= 0.0) {
            out.push_back(cur);
            if (sn < 0.0) {
                const double t = sc / (sc - sn);
                out.push_back(cur + (nxt - cur) * t);
            }
        } else if (sn >= 0.0) {
            const double t = sc / (sc - sn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    return out;
}

double dist_point_convex_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) return (p - poly[0]).norm();
    if (point_in_polygon(p, poly)) return 0.0;
    return polygon_boundary_distance(p, poly);
}

}  // namespace

double wrap_angle(double a) {
    const double w = std::remainder(a, 2.0 * kPi);
    return (w <= -kPi) ? kPi : w;
}

Vec2 closest_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len_sq = ab.norm_sq();
    if (len_sq <= 0.0) return a;
    const double t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
    return a + ab * t;
}

double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    return (p - closest_point_segment(p, a, b)).norm();
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        const double v = cross(q - p, r - p);
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    const auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
        return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
               std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
    };
    if (o1 == 0 && on_segment(a, c, b)) return true;
    if (o2 == 0 && on_segment(a, d, b)) return true;
    if (o3 == 0 && on_segment(c, a, d)) return true;
    if (o4 == 0 && on_segment(c, b, d)) return true;
    return false;
}

double dist_segment_segment(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    double best = dist_point_segment(a, c, d);
    best = std::min(best, dist_point_segment(b, c, d));
    best = std::min(best, dist_point_segment(c, a, b));
    best = std::min(best, dist_point_segment(d, a, b));
    return best;
}

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 vi = poly[i];
        const Vec2 vj = poly[j];
        if (dist_point_segment(p, vj, vi) <= 1e-12) return true;
        const bool crosses = (vi.y > p.y) != (vj.y > p.y);
        if (crosses) {
            const double x_hit = vj.x + (vi.x - vj.x) * (p.y - vj.y) / (vi.y - vj.y);
            if (p.x < x_hit) inside = !inside;
        }
    }
    return inside;
}

double polygon_boundary_distance(Vec2 p, const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        best = std::min(best, dist_point_segment(p, poly[j], poly[i]));
    }
    return best;
}

double signed_distance_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    const double d = polygon_boundary_distance(p, poly);
    return point_in_polygon(p, poly) ? -d : d;
}

double polygon_area_signed(const std::vector<Vec2>& poly) {
    double acc = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += cross(poly[j], poly[i]);
    }
    return 0.5 * acc;
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2 c = poly[j];
            const Vec2 d = poly[(j + 1) % n];
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

std::optional<double> raycast_segment(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double denom = cross(dir, ab);
    if (std::abs(denom) < 1e-15) return std::nullopt;  // parallel: treated as a miss
    const Vec2 rel = a - origin;
    const double t = cross(rel, ab) / denom;
    const double s = cross(rel, dir) / denom;
    if (t < 0.0 || s < -1e-12 || s > 1.0 + 1e-12) return std::nullopt;
    return t;
}

std::optional<double> raycast_circle(Vec2 origin, Vec2 dir, Vec2 center, double radius) {
    const Vec2 rel = center - origin;
    const double m = dir.dot(rel);
    const double disc = m * m - (rel.norm_sq() - radius * radius);
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t1 = m - sq;
    if (t1 >= 0.0) return t1;
    const double t2 = m + sq;
    if (t2 >= 0.0) return t2;  // origin inside: report the exit point
    return std::nullopt;
}

// ---- ConvexRegion ----

ConvexRegion ConvexRegion::disk_region(Vec2 center, double radius) {
    ConvexRegion r;
    r.set_disk({center, radius});
    return r;
}

void ConvexRegion::set_disk(const Disk& d) {
    if (disk_.has_value()) throw DomainError("ConvexRegion: only one disk supported");
    if (d.radius < 0.0) throw DomainError("ConvexRegion: negative disk radius");
    disk_ = d;
}

bool ConvexRegion::contains(Vec2 p, double tol) const {
    for (const HalfPlane& hp : halfplanes_) {
        if (hp.slack(p) < -tol) return false;
    }
    if (disk_ && (p - disk_->center).norm() > disk_->radius + tol) return false;
    return true;
}

double ConvexRegion::boundary_clearance(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const HalfPlane& hp : halfplanes_) best = std::min(best, hp.slack(p));
    if (disk_) best = std::min(best, disk_->radius - (p - disk_->center).norm());
    return best;
}

bool ConvexRegion::empty() const {
    // Clip a generous bounding box by every half-plane; with a disk present
    // the box only needs to cover the disk, otherwise it is sized from the
    // anchor extent (regions entirely beyond that scale are treated empty).
    if (halfplanes_.empty()) return false;  // plane or single disk
    Vec2 lo, hi;
    if (disk_) {
        lo = disk_->center - Vec2{disk_->radius + 1.0, disk_->radius + 1.0};
        hi = disk_->center + Vec2{disk_->radius + 1.0, disk_->radius + 1.0};
    } else {
        lo = hi = halfplanes_.front().anchor;
        for (const HalfPlane& hp : halfplanes_) {
            lo.x = std::min(lo.x, hp.anchor.x);
            lo.y = std::min(lo.y, hp.anchor.y);
            hi.x = std::max(hi.x, hp.anchor.x);
            hi.y = std::max(hi.y, hp.anchor.y);
        }
        const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1.0});
        const double pad = std::max(1e3, 100.0 * span);
        lo -= Vec2{pad, pad};
        hi += Vec2{pad, pad};
    }
    std::vector<Vec2> poly = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
    for (const HalfPlane& hp : halfplanes_) {
        poly = clip_polygon(poly, hp);
        if (poly.empty()) return true;
    }
    if (disk_) {
        return dist_point_convex_polygon(disk_->center, poly) > disk_->radius + 1e-12;
    }
    return false;
}

Vec2 ConvexRegion::project(Vec2 q) const {
    if (contains(q, 1e-12)) return q;

    const std::size_t m = halfplanes_.size() + (disk_ ? 1 : 0);
    std::vector<Vec2> increments(m, Vec2{});
    Vec2 x = q;
    bool converged = false;
    for (int iter = 0; iter < kProjectionIterationCap; ++iter) {
        const Vec2 cycle_start = x;
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 y = x + increments[i];
            const Vec2 proj = (i < halfplanes_.size()) ? project_halfplane(halfplanes_[i], y)
                                                       : project_disk(*disk_, y);
            increments[i] = y - proj;
            x = proj;
        }
        if ((x - cycle_start).norm() <= kProjectionTol) {
            converged = true;
            break;
        }
    }
    if (!converged || boundary_clearance(x) < -1e-7) {
        if (empty()) throw EmptyRegion("ConvexRegion::project: empty intersection");
    }
    return x;
}

std::pair<double, double> ConvexRegion::line_slice(Vec2 point, Vec2 dir) const {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const HalfPlane& hp : halfplanes_) {
        const double base = hp.slack(point);
        const double rate = dir.dot(hp.normal);
        if (std::abs(rate) < 1e-15) {
            if (base < -1e-9) throw EmptyRegion("line_slice: line outside half-plane");
            continue;
        }
        const double s = -base / rate;  // slack zero crossing
        if (rate > 0.0) {
            lo = std::max(lo, s);
        } else {
            hi = std::min(hi, s);
        }
    }
    if (disk_) {
        const Vec2 rel = point - disk_->center;
        const double b = dir.dot(rel);
        const double c = rel.norm_sq() - disk_->radius * disk_->radius;
        const double disc = b * b - c;
        if (disc < 0.0) throw EmptyRegion("line_slice: line misses disk");
        const double sq = std::sqrt(disc);
        lo = std::max(lo, -b - sq);
        hi = std::min(hi, -b + sq);
    }
    if (lo > hi) throw EmptyRegion("line_slice: empty interval");
    return {lo, hi};
}

// ---- Path segments ----

double segment_length(const PathSegment& s) {
    if (std::holds_alternative<LineSegment>(s)) {
        const auto& l = std::get<LineSegment>(s);
        return (l.b - l.a).norm();
    }
    const auto& a = std::get<ArcSegment>(s);
    return std::abs(a.sweep) * a.radius;
}

Vec2 segment_eval(const PathSegment& s, double t) {
    if (std::holds_alternative<LineSegment>(s)) {
        const auto& l = std::get<LineSegment>(s);
        if (t <= 0.0) return l.a;
        if (t >= 1.0) return l.b;
        return l.a + (l.b - l.a) * t;
    }
    const auto& a = std::get<ArcSegment>(s);
    const double theta = (t >= 1.0) ? a.start_angle + a.sweep : a.start_angle + t * a.sweep;
    return a.center + unit_from_angle(theta) * a.radius;
}

Vec2 segment_tangent(const PathSegment& s, double t) {
    if (std::holds_alternative<LineSegment>(s)) {
        const auto& l = std::get<LineSegment>(s);
        return (l.b - l.a).normalized();
    }
    const auto& a = std::get<ArcSegment>(s);
    const double theta = a.start_angle + std::clamp(t, 0.0, 1.0) * a.sweep;
    const Vec2 radial = unit_from_angle(theta);
    return (a.sweep >= 0.0) ? perp(radial) : -perp(radial);
}

// ---- RefPath ----

RefPath::RefPath(std::vector<PathSegment> segments) {
    // Drop zero-length pieces so the cumulative table stays strictly increasing.
    Vec2 last_end;
    bool have_last = false;
    for (const PathSegment& s : segments) {
        const double len = segment_length(s);
        const Vec2 head = segment_eval(s, 0.0);
        if (have_last && (head - last_end).norm() > 1e-9) {
            throw DomainError("RefPath: discontinuous segment chain");
        }
        last_end = segment_eval(s, 1.0);
        have_last = true;
        if (len <= 1e-12) continue;
        segments_.push_back(s);
    }
    if (segments_.empty()) {
        if (!segments.empty()) degenerate_point_ = segment_eval(segments.front(), 0.0);
        total_length_ = 0.0;
        return;
    }
    cumulative_.resize(segments_.size() + 1);
    cumulative_[0] = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        cumulative_[i + 1] = cumulative_[i] + segment_length(segments_[i]);
    }
    total_length_ = cumulative_.back();
}

RefPath RefPath::line(Vec2 a, Vec2 b) {
    return RefPath({PathSegment{LineSegment{a, b}}});
}

RefPath RefPath::polyline(const std::vector<Vec2>& pts) {
    if (pts.empty()) throw DomainError("RefPath::polyline: no points");
    if (pts.size() == 1) return point(pts.front());
    std::vector<PathSegment> segs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        segs.push_back(LineSegment{pts[i], pts[i + 1]});
    }
    return RefPath(std::move(segs));
}

RefPath RefPath::point(Vec2 p) {
    RefPath path;
    path.degenerate_point_ = p;
    return path;
}

Vec2 RefPath::start() const {
    if (degenerate()) return degenerate_point_;
    return segment_eval(segments_.front(), 0.0);
}

Vec2 RefPath::end() const {
    if (degenerate()) return degenerate_point_;
    return segment_eval(segments_.back(), 1.0);
}

RefPath::Location RefPath::locate(double alpha) const {
    const double s = alpha * total_length_;
    // First segment whose span contains s; upper_bound picks the right limit
    // at interior breakpoints.
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t idx = (it == cumulative_.begin()) ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    if (idx >= segments_.size()) idx = segments_.size() - 1;
    const double len = cumulative_[idx + 1] - cumulative_[idx];
    const double t = std::clamp((s - cumulative_[idx]) / len, 0.0, 1.0);
    return {idx, t};
}

RefPath::Location RefPath::locate_right(double alpha) const {
    return locate(alpha);
}

Vec2 RefPath::eval(double alpha) const {
    if (alpha < -1e-12 || alpha > 1.0 + 1e-12) throw DomainError("RefPath::eval: alpha outside [0,1]");
    alpha = std::clamp(alpha, 0.0, 1.0);
    if (degenerate()) return degenerate_point_;
    if (alpha == 0.0) return start();
    if (alpha == 1.0) return end();
    const Location loc = locate(alpha);
    return segment_eval(segments_[loc.index], loc.t);
}

Vec2 RefPath::tangent(double alpha) const {
    if (alpha < -1e-12 || alpha > 1.0 + 1e-12) throw DomainError("RefPath::tangent: alpha outside [0,1]");
    alpha = std::clamp(alpha, 0.0, 1.0);
    if (degenerate()) return {1.0, 0.0};
    const Location loc = locate_right(alpha);
    return segment_tangent(segments_[loc.index], loc.t);
}

RefPath RefPath::truncate(double alpha) const {
    if (alpha <= 0.0) throw DomainError("RefPath::truncate: alpha must be positive");
    if (alpha > 1.0 + 1e-12) throw DomainError("RefPath::truncate: alpha outside (0,1]");
    alpha = std::min(alpha, 1.0);
    if (degenerate()) return *this;
    if (alpha == 1.0) return *this;

    const double s_cut = alpha * total_length_;
    std::vector<PathSegment> segs;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (cumulative_[i + 1] <= s_cut + 1e-12) {
            segs.push_back(segments_[i]);
            if (cumulative_[i + 1] >= s_cut - 1e-12) break;
            continue;
        }
        const double len = cumulative_[i + 1] - cumulative_[i];
        const double t = (s_cut - cumulative_[i]) / len;
        if (std::holds_alternative<LineSegment>(segments_[i])) {
            const auto& l = std::get<LineSegment>(segments_[i]);
            segs.push_back(LineSegment{l.a, segment_eval(segments_[i], t)});
        } else {
            auto arc = std::get<ArcSegment>(segments_[i]);
            arc.sweep *= t;
            segs.push_back(arc);
        }
        break;
    }
    if (segs.empty()) return point(start());
    return RefPath(std::move(segs));
}

namespace {

struct Interval {
    double lo;
    double hi;
};

// Local-parameter intervals where a line segment stays inside the closed ball.
std::optional<Interval> line_ball_interval(const LineSegment& l, Vec2 c, double r) {
    const Vec2 d = l.b - l.a;
    const Vec2 rel = l.a - c;
    const double A = d.norm_sq();
    if (A <= 0.0) return std::nullopt;
    const double B = 2.0 * d.dot(rel);
    const double C = rel.norm_sq() - r * r;
    double disc = B * B - 4.0 * A * C;
    const double scale = std::max({B * B, std::abs(4.0 * A * C), 1e-300});
    if (disc < 0.0) {
        if (disc < -1e-12 * scale) return std::nullopt;
        disc = 0.0;  // grazing tangency
    }
    const double sq = std::sqrt(disc);
    const double lo = std::clamp((-B - sq) / (2.0 * A), 0.0, 1.0);
    const double hi = std::clamp((-B + sq) / (2.0 * A), 0.0, 1.0);
    if ((-B + sq) / (2.0 * A) < 0.0 || (-B - sq) / (2.0 * A) > 1.0) return std::nullopt;
    // Guard the tangency relaxation: accept only if the endpoints truly touch.
    const auto dist_at = [&](double t) { return (l.a + d * t - c).norm(); };
    if (dist_at(lo) > r + 1e-9 || dist_at(hi) > r + 1e-9) return std::nullopt;
    return Interval{lo, hi};
}

std::vector<Interval> arc_ball_intervals(const ArcSegment& arc, Vec2 c, double r) {
    std::vector<Interval> out;
    const Vec2 rel = c - arc.center;
    const double dist = rel.norm();
    if (dist < 1e-12) {
        if (arc.radius <= r + 1e-12) out.push_back({0.0, 1.0});
        return out;
    }
    if (dist + arc.radius <= r + 1e-12) {  // whole circle inside the ball
        out.push_back({0.0, 1.0});
        return out;
    }
    // ||p(theta) - c||^2 = rho^2 + dist^2 - 2 rho dist cos(theta - phi)
    const double h = (arc.radius * arc.radius + dist * dist - r * r) / (2.0 * arc.radius * dist);
    if (h > 1.0 + 1e-9) return out;
    if (h < -1.0) {
        out.push_back({0.0, 1.0});
        return out;
    }
    const double gamma = std::acos(std::clamp(h, -1.0, 1.0));
    const double phi = bearing(rel);
    const double psi0 = arc.start_angle - phi;
    const double psi1 = psi0 + arc.sweep;
    const double lo_psi = std::min(psi0, psi1);
    const double hi_psi = std::max(psi0, psi1);
    const int k_lo = static_cast<int>(std::floor((lo_psi - gamma) / (2.0 * kPi))) - 1;
    const int k_hi = static_cast<int>(std::ceil((hi_psi + gamma) / (2.0 * kPi))) + 1;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double band_lo = 2.0 * kPi * k - gamma;
        const double band_hi = 2.0 * kPi * k + gamma;
        double t_a = (band_lo - psi0) / arc.sweep;
        double t_b = (band_hi - psi0) / arc.sweep;
        if (t_a > t_b) std::swap(t_a, t_b);
        const double lo = std::max(t_a, 0.0);
        const double hi = std::min(t_b, 1.0);
        if (lo <= hi) out.push_back({lo, hi});
    }
    return out;
}

std::vector<Interval> segment_ball_intervals(const PathSegment& s, Vec2 c, double r) {
    if (std::holds_alternative<LineSegment>(s)) {
        std::vector<Interval> out;
        if (auto iv = line_ball_interval(std::get<LineSegment>(s), c, r)) out.push_back(*iv);
        return out;
    }
    return arc_ball_intervals(std::get<ArcSegment>(s), c, r);
}

}  // namespace

std::optional<double> RefPath::max_ball_param(Vec2 center, double radius) const {
    if (radius < 0.0) throw DomainError("max_ball_param: negative radius");
    if (degenerate()) {
        if ((degenerate_point_ - center).norm() <= radius + 1e-12) return 1.0;
        return std::nullopt;
    }
    for (std::size_t i = segments_.size(); i-- > 0;) {
        const auto intervals = segment_ball_intervals(segments_[i], center, radius);
        double best = -1.0;
        for (const auto& iv : intervals) best = std::max(best, iv.hi);
        if (best >= 0.0) {
            const double len = cumulative_[i + 1] - cumulative_[i];
            return std::clamp((cumulative_[i] + best * len) / total_length_, 0.0, 1.0);
        }
    }
    return std::nullopt;
}

std::optional<double> RefPath::min_ball_param(Vec2 center, double radius) const {
    if (radius < 0.0) throw DomainError("min_ball_param: negative radius");
    if (degenerate()) {
        if ((degenerate_point_ - center).norm() <= radius + 1e-12) return 0.0;
        return std::nullopt;
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto intervals = segment_ball_intervals(segments_[i], center, radius);
        double best = 2.0;
        for (const auto& iv : intervals) best = std::min(best, iv.lo);
        if (best <= 1.0) {
            const double len = cumulative_[i + 1] - cumulative_[i];
            return std::clamp((cumulative_[i] + best * len) / total_length_, 0.0, 1.0);
        }
    }
    return std::nullopt;
}

}  // namespace warebot::geom
