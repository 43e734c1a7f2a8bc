#include "warebot/plan_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace warebot::io {

namespace {

std::vector<geom::Vec2> path_breakpoints(const geom::RefPath& path) {
    std::vector<geom::Vec2> pts;
    if (path.degenerate() || path.segments().empty()) {
        pts.push_back(path.start());
        pts.push_back(path.end());
        return pts;
    }
    pts.push_back(path.start());
    for (const auto& seg : path.segments()) {
        if (std::holds_alternative<geom::LineSegment>(seg)) {
            pts.push_back(std::get<geom::LineSegment>(seg).b);
        } else {
            // Arcs are flattened at 33 samples; the planner emits lines only.
            const auto& a = std::get<geom::ArcSegment>(seg);
            for (int i = 1; i <= 32; ++i) {
                const double theta = a.start_angle + a.sweep * i / 32.0;
                pts.push_back(a.center + geom::unit_from_angle(theta) * a.radius);
            }
        }
    }
    return pts;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string save_plan(const executive::Plan& plan, bool with_samples) {
    std::ostringstream os;
    os << "# plan v1\n";
    for (const auto& action : plan.actions) {
        const auto pts = path_breakpoints(action.path);
        os << executive::action_kind_name(action.kind) << ' ' << action.object_id << ' ' << pts.size();
        for (auto p : pts) os << ' ' << format_number(p.x) << ' ' << format_number(p.y);
        os << '\n';
        if (with_samples) {
            os << "# samples:";
            for (int i = 0; i <= 32; ++i) {
                const geom::Vec2 p = action.path.eval(i / 32.0);
                os << " (" << format_number(p.x) << "," << format_number(p.y) << ")";
            }
            os << '\n';
        }
    }
    return os.str();
}

executive::Plan load_plan(const std::string& text) {
    executive::Plan plan;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind;
        int id = 0;
        std::size_t n = 0;
        if (!(ls >> kind >> id >> n) || n < 1) throw DomainError("plan parse error: " + line);
        std::vector<geom::Vec2> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(ls >> pts[i].x >> pts[i].y)) throw DomainError("plan parse error: " + line);
        }
        executive::SymbolicAction action;
        action.object_id = id;
        if (kind == "MOVE_TO_OBJECT") {
            action.kind = executive::ActionKind::move_to_object;
        } else if (kind == "POSITION_OBJECT") {
            action.kind = executive::ActionKind::position_object;
        } else if (kind == "MOVE") {
            action.kind = executive::ActionKind::move;
        } else {
            throw DomainError("plan parse error: unknown action " + kind);
        }
        action.path = (pts.size() == 1) ? geom::RefPath::point(pts[0]) : geom::RefPath::polyline(pts);
        plan.actions.push_back(std::move(action));
    }
    return plan;
}

executive::Plan load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_plan(buf.str());
}

}  // namespace warebot::io
