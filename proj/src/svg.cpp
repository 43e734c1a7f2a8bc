#include "warebot/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace warebot::io {

namespace {

// y is negated on output so the figure reads y-up.
std::string pt(geom::Vec2 p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f,%.4f", p.x, -p.y);
    return buf;
}

void polyline(std::ostream& os, const std::vector<geom::Vec2>& pts, const char* stroke,
              double width, bool closed, const char* fill = "none", const char* dash = nullptr) {
    os << (closed ? "<polygon points=\"" : "<polyline points=\"");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << pt(pts[i]);
    }
    os << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
    if (dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n";
}

void circle(std::ostream& os, geom::Vec2 c, double r, const char* stroke, const char* fill,
            double width, const char* dash = nullptr) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\"", c.x, -c.y, r);
    os << buf << " fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
    if (dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << "/>\n";
}

}  // namespace

void write_svg(std::ostream& os, const world::Scenario& scenario, const executive::Plan& plan,
               const std::vector<sim::Trajectory>& trajectories) {
    geom::Vec2 lo = scenario.workspace.boundary.front(), hi = lo;
    for (auto v : scenario.workspace.boundary) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
    const double pad = 0.05 * std::max(hi.x - lo.x, hi.y - lo.y);
    char header[256];
    std::snprintf(header, sizeof(header),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.4f %.4f %.4f %.4f\">\n",
                  lo.x - pad, -(hi.y + pad), (hi.x - lo.x) + 2 * pad, (hi.y - lo.y) + 2 * pad);
    os << header;
    os << "<g stroke-linejoin=\"round\" stroke-linecap=\"round\">\n";

    polyline(os, scenario.workspace.boundary, "black", 0.08, true);
    for (const auto& o : scenario.obstacles) {
        const char* color = o.known ? "black" : "#9a9a9a";
        if (std::holds_alternative<world::DiskShape>(o.shape)) {
            const auto& d = std::get<world::DiskShape>(o.shape);
            circle(os, d.center, d.radius, color, color, 0.0);
        } else {
            polyline(os, std::get<world::PolygonShape>(o.shape).vertices, color, 0.0, true, color);
        }
    }

    for (const auto& action : plan.actions) {
        std::vector<geom::Vec2> pts;
        for (int i = 0; i <= 64; ++i) pts.push_back(action.path.eval(i / 64.0));
        polyline(os, pts, "#8e44ad", 0.05, false);
    }

    for (const auto& traj : trajectories) {
        std::vector<geom::Vec2> robot_pts, object_pts;
        for (const auto& r : traj.records) {
            robot_pts.push_back(r.x);
            if (r.has_object) object_pts.push_back(r.object);
        }
        if (robot_pts.size() > 1) polyline(os, robot_pts, "#2166ac", 0.04, false);
        if (object_pts.size() > 1) polyline(os, object_pts, "#b2182b", 0.04, false);
    }

    for (const auto& obj : scenario.objects) {
        circle(os, obj.start, obj.radius, "#c8a200", "#ffd54a", 0.02);
        circle(os, obj.goal, obj.radius, "#c8a200", "none", 0.03, "0.1,0.08");
    }
    circle(os, scenario.robot_start, scenario.robot_radius, "#2166ac", "none", 0.03);

    os << "</g>\n</svg>\n";
}

}  // namespace warebot::io
