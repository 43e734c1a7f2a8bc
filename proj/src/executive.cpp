#include "warebot/executive.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace warebot::executive {

namespace {

double known_clearance(const world::Scenario& s, Vec2 p) {
    double best = s.workspace.interior_clearance(p);
    for (const auto& o : s.obstacles) {
        if (!o.known) continue;
        if (std::holds_alternative<world::DiskShape>(o.shape)) {
            const auto& d = std::get<world::DiskShape>(o.shape);
            best = std::min(best, (p - d.center).norm() - d.radius);
        } else {
            best = std::min(best, geom::signed_distance_polygon(p, std::get<world::PolygonShape>(o.shape).vertices));
        }
    }
    return best;
}

bool segment_clear(const world::Scenario& s, Vec2 a, Vec2 b, double margin) {
    const double len = (b - a).norm();
    const int n = std::max(1, static_cast<int>(std::ceil(len / 0.01)));
    for (int i = 0; i <= n; ++i) {
        const Vec2 p = a + (b - a) * (static_cast<double>(i) / n);
        if (known_clearance(s, p) < margin) return false;
    }
    return true;
}

struct Grid {
    Vec2 origin;
    double cell = 0.1;
    int nx = 0, ny = 0;
    std::vector<char> free;  // row-major, 1 = traversable

    int index(int ix, int iy) const { return iy * nx + ix; }
    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < nx && iy >= 0 && iy < ny; }
    Vec2 center(int ix, int iy) const {
        return origin + Vec2{(ix + 0.5) * cell, (iy + 0.5) * cell};
    }
};

Grid build_grid(const world::Scenario& s, double margin) {
    Grid g;
    Vec2 lo = s.workspace.boundary.front(), hi = lo;
    for (Vec2 v : s.workspace.boundary) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
    g.origin = lo;
    g.cell = 0.1;
    g.nx = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / g.cell)));
    g.ny = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / g.cell)));
    g.free.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
    // Inflate the threshold so straight segments between free cell centers
    // keep the margin between samples.
    const double inflated = margin + 0.75 * g.cell;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (known_clearance(s, g.center(ix, iy)) >= inflated) {
                g.free[static_cast<std::size_t>(g.index(ix, iy))] = 1;
            }
        }
    }
    return g;
}

std::optional<std::pair<int, int>> nearest_free_cell(const Grid& g, Vec2 p) {
    const int cx = static_cast<int>(std::floor((p.x - g.origin.x) / g.cell));
    const int cy = static_cast<int>(std::floor((p.y - g.origin.y) / g.cell));
    for (int radius = 0; radius <= 5; ++radius) {
        std::optional<std::pair<int, int>> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (int dy = -radius; dy <= radius; ++dy) {
            for (int dx = -radius; dx <= radius; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != radius) continue;
                const int ix = cx + dx, iy = cy + dy;
                if (!g.in_bounds(ix, iy) || !g.free[static_cast<std::size_t>(g.index(ix, iy))]) continue;
                const double d = (g.center(ix, iy) - p).norm();
                if (d < best_d) {
                    best_d = d;
                    best = std::make_pair(ix, iy);
                }
            }
        }
        if (best) return best;
    }
    return std::nullopt;
}

// A* over the 8-connected grid with octile heuristic; diagonal moves must not
// cut blocked corners. Deterministic tie-breaking by (f, h, index).
std::vector<std::pair<int, int>> grid_search(const Grid& g, std::pair<int, int> start,
                                             std::pair<int, int> goal) {
    const auto h = [&](int ix, int iy) {
        const double dx = std::abs(ix - goal.first), dy = std::abs(iy - goal.second);
        return (dx + dy) + (std::sqrt(2.0) - 2.0) * std::min(dx, dy);
    };
    const std::size_t total = static_cast<std::size_t>(g.nx) * g.ny;
    std::vector<double> cost(total, std::numeric_limits<double>::infinity());
    std::vector<int> parent(total, -1);
    using Node = std::tuple<double, double, int>;  // (f, h, index)
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;

    const int si = g.index(start.first, start.second);
    cost[static_cast<std::size_t>(si)] = 0.0;
    open.emplace(h(start.first, start.second), h(start.first, start.second), si);

    const int dxs[] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dys[] = {0, 0, 1, -1, 1, -1, 1, -1};

    while (!open.empty()) {
        const auto [f, hh, idx] = open.top();
        open.pop();
        const int ix = idx % g.nx, iy = idx / g.nx;
        if (ix == goal.first && iy == goal.second) break;
        const double c = cost[static_cast<std::size_t>(idx)];
        if (f - hh > c + 1e-12) continue;  // stale entry
        for (int k = 0; k < 8; ++k) {
            const int nx = ix + dxs[k], ny = iy + dys[k];
            if (!g.in_bounds(nx, ny) || !g.free[static_cast<std::size_t>(g.index(nx, ny))]) continue;
            if (k >= 4) {  // diagonal: both orthogonal neighbors must be free
                if (!g.free[static_cast<std::size_t>(g.index(ix, ny))] ||
                    !g.free[static_cast<std::size_t>(g.index(nx, iy))]) {
                    continue;
                }
            }
            const double step = (k >= 4) ? std::sqrt(2.0) : 1.0;
            const double nc = c + step;
            const std::size_t ni = static_cast<std::size_t>(g.index(nx, ny));
            if (nc < cost[ni] - 1e-12) {
                cost[ni] = nc;
                parent[ni] = idx;
                open.emplace(nc + h(nx, ny), h(nx, ny), g.index(nx, ny));
            }
        }
    }

    const std::size_t gi = static_cast<std::size_t>(g.index(goal.first, goal.second));
    if (!std::isfinite(cost[gi])) return {};
    std::vector<std::pair<int, int>> cells;
    for (int idx = static_cast<int>(gi); idx != -1; idx = parent[static_cast<std::size_t>(idx)]) {
        cells.emplace_back(idx % g.nx, idx / g.nx);
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
}

std::vector<Vec2> shortcut(const world::Scenario& s, const std::vector<Vec2>& pts, double margin) {
    std::vector<Vec2> out;
    out.push_back(pts.front());
    std::size_t i = 0;
    while (i + 1 < pts.size()) {
        std::size_t j = pts.size() - 1;
        for (; j > i + 1; --j) {
            if (segment_clear(s, pts[i], pts[j], margin)) break;
        }
        out.push_back(pts[j]);
        i = j;
    }
    return out;
}

}  // namespace

double planning_margin(const world::Scenario& s) {
    return s.robot_radius + s.max_object_radius() + 2.0 * s.epsilon();
}

RefPath plan_path(const world::Scenario& s, Vec2 start, Vec2 goal) {
    const double margin = planning_margin(s);
    if (known_clearance(s, start) < margin) throw NoPath("plan_path: start violates the planning margin");
    if (known_clearance(s, goal) < margin) throw NoPath("plan_path: goal violates the planning margin");
    if ((goal - start).norm() < 1e-12) return RefPath::point(start);
    if (segment_clear(s, start, goal, margin)) return RefPath::line(start, goal);

    const Grid grid = build_grid(s, margin);
    const auto sc = nearest_free_cell(grid, start);
    const auto gc = nearest_free_cell(grid, goal);
    if (!sc || !gc) throw NoPath("plan_path: endpoint not connectable to the free grid");
    const auto cells = grid_search(grid, *sc, *gc);
    if (cells.empty()) throw NoPath("plan_path: no grid corridor with the required clearance");

    std::vector<Vec2> pts;
    pts.push_back(start);
    for (const auto& [ix, iy] : cells) pts.push_back(grid.center(ix, iy));
    pts.push_back(goal);
    std::vector<Vec2> smooth = shortcut(s, pts, margin);

    // The endpoint stubs are only as good as the nearest free cells; verify.
    for (std::size_t i = 0; i + 1 < smooth.size(); ++i) {
        if (!segment_clear(s, smooth[i], smooth[i + 1], margin)) {
            throw NoPath("plan_path: could not keep the margin near an endpoint");
        }
    }
    return RefPath::polyline(smooth);
}

Plan deliberative_plan(const world::Scenario& s) {
    Plan plan;
    Vec2 robot = s.robot_start;
    for (const auto& obj : s.objects) {
        SymbolicAction approach;
        approach.kind = ActionKind::move_to_object;
        approach.object_id = obj.id;
        approach.path = plan_path(s, robot, obj.start);
        plan.actions.push_back(approach);

        SymbolicAction position;
        position.kind = ActionKind::position_object;
        position.object_id = obj.id;
        position.path = plan_path(s, obj.start, obj.goal);
        plan.actions.push_back(position);

        // Predicted robot position after release: behind the placed object
        // along the final approach direction.
        const Vec2 t_end = position.path.degenerate() ? Vec2{1.0, 0.0} : position.path.tangent(1.0);
        robot = obj.goal - t_end * (obj.radius + s.robot_radius);
    }
    if (s.params.nest) {
        SymbolicAction home;
        home.kind = ActionKind::move;
        home.object_id = 0;
        home.path = plan_path(s, robot, *s.params.nest);
        plan.actions.push_back(home);
    }
    return plan;
}

std::string action_kind_name(ActionKind kind) {
    switch (kind) {
        case ActionKind::move_to_object: return "MOVE_TO_OBJECT";
        case ActionKind::position_object: return "POSITION_OBJECT";
        case ActionKind::move: return "MOVE";
    }
    return "UNKNOWN";
}

}  // namespace warebot::executive
