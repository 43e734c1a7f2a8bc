#include "warebot/reactive.hpp"

#include <algorithm>
#include <cmath>

namespace warebot::reactive {

std::pair<double, Vec2> projected_path_goal(const RefPath& path, Vec2 x, double d_free,
                                            double alpha_prev) {
    const auto alpha = path.max_ball_param(x, std::max(d_free, 0.0));
    if (alpha) return {*alpha, path.eval(*alpha)};
    return {alpha_prev, path.eval(alpha_prev)};
}

Vec2 holonomic_law(Vec2 x, const ConvexRegion& region, Vec2 goal, double k) {
    return -k * (x - region.project(goal));
}

int choose_wall_direction(Vec2 t_w0, Vec2 t_path) {
    return (t_w0.dot(t_path) >= 0.0) ? 1 : -1;
}

Vec2 wall_goal(Vec2 x_offset, Vec2 n_w, Vec2 t_w, double eps, int a) {
    return x_offset + n_w * (0.5 * eps) + t_w * (a * eps * std::sqrt(3.0) / 2.0);
}

Vec2 wall_following_law(Vec2 x, const sensing::WallFrame& frame, double eps, int a, double k) {
    return -k * (x - wall_goal(frame.offset_point, frame.normal, frame.tangent, eps, a));
}

UnicycleCommand unicycle_law(Vec2 x, double psi, const ConvexRegion& region_v,
                             const ConvexRegion& region_omega, const ConvexRegion& region_l,
                             Vec2 goal, double k) {
    const Vec2 heading = geom::unit_from_angle(psi);

    // Forward speed: project the goal onto the free interval of the heading
    // line through x, then clamp backward motion away.
    const auto [lo, hi] = region_v.line_slice(x, heading);
    const double along = std::clamp(heading.dot(goal - x), std::min(lo, 0.0), std::max(hi, 0.0));
    const double v = k * std::max(along, 0.0);

    const Vec2 mean = (region_omega.project(goal) + region_l.project(goal)) * 0.5;
    const Vec2 to_goal = mean - x;
    const double forward = heading.dot(to_goal);
    const double lateral = geom::perp(heading).dot(to_goal);
    // Zero at perfect alignment, positive (CCW) for goals on the left.
    const double omega = (to_goal.norm() < 1e-12) ? 0.0 : k * std::atan2(lateral, forward);
    return {v, omega};
}

NavStep navigate_step(const world::RobotState& state, const RefPath& path,
                      const sensing::Scan& scan, NavMode mode, const NavParams& p) {
    NavStep out;
    const Vec2 x = state.x;

    const double d = sensing::boundary_distance(scan, p.body_radius);
    auto [alpha, path_goal] = projected_path_goal(path, x, d, mode.alpha_last);
    mode.alpha_last = alpha;

    Vec2 goal = path_goal;
    if (mode.mode == Mode::path_following) {
        if (d < p.eps) {
            const auto frame = sensing::wall_frame(scan, p.body_radius);
            mode.mode = Mode::wall_following;
            mode.alpha_saved = alpha;
            mode.direction = choose_wall_direction(frame.tangent, path.tangent(alpha));
        }
        const auto region = sensing::local_free_space(scan, p.body_radius);
        if (p.holonomic) {
            out.command.type = Command::Type::holonomic;
            out.command.u = holonomic_law(x, region, goal, p.k);
        } else {
            out.command.type = Command::Type::unicycle;
            const auto uc = unicycle_law(x, state.psi, region, region, region, goal, p.k);
            out.command.v = uc.v;
            out.command.omega = uc.omega;
        }
    } else {
        const auto frame = sensing::wall_frame(scan, p.body_radius);
        goal = wall_goal(frame.offset_point, frame.normal, frame.tangent, p.eps, mode.direction);
        out.wall_active = true;
        out.wall_law_u = wall_following_law(x, frame, p.eps, mode.direction, p.k);
        out.wall_tangent = frame.tangent;
        out.wall_hit = frame.hit;
        if (alpha > mode.alpha_saved) mode.mode = Mode::path_following;

        if (p.holonomic) {
            out.command.type = Command::Type::holonomic;
            out.command.u = out.wall_law_u;
        } else {
            out.command.type = Command::Type::unicycle;
            const auto region = sensing::local_free_space(scan, p.body_radius);
            const auto uc = unicycle_law(x, state.psi, region, region, region, goal, p.k);
            out.command.v = uc.v;
            out.command.omega = uc.omega;
        }
    }

    mode.reached = (x - path.end()).norm() <= p.delta;
    out.mode = mode;
    out.d = d;
    out.alpha = alpha;
    out.goal = goal;
    return out;
}

}  // namespace warebot::reactive
