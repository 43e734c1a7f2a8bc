#include "warebot/grasp.hpp"

#include <cmath>

namespace warebot::grasp {

Vec2 object_position(const GraspFrame& f) {
    return f.x + geom::unit_from_angle(f.psi) * (f.rho + f.r);
}

Vec2 center_position(const GraspFrame& f) {
    return f.x + geom::unit_from_angle(f.psi) * f.rho;
}

Mat2 jacobian_object(const GraspFrame& f) {
    const double c = std::cos(f.psi), s = std::sin(f.psi);
    const double L = f.rho + f.r;
    return {c, -L * s, s, L * c};
}

Mat2 jacobian_center(const GraspFrame& f) {
    const double c = std::cos(f.psi), s = std::sin(f.psi);
    return {c, -f.rho * s, s, f.rho * c};
}

reactive::UnicycleCommand virtual_to_actual(const Mat2& T, Vec2 u_virtual) {
    const double det = T.det();
    if (std::abs(det) < 1e-12) throw SingularJacobian("virtual_to_actual: non-invertible kinematic map");
    const double v = (T.d * u_virtual.x - T.b * u_virtual.y) / det;
    const double omega = (-T.c * u_virtual.x + T.a * u_virtual.y) / det;
    return {v, omega};
}

ObjectNavStep navigate_robot_object_step(const world::RobotState& state, double rho,
                                         const RefPath& path, const sensing::Scan& scan,
                                         reactive::NavMode mode, const reactive::NavParams& p) {
    const GraspFrame frame{state.x, state.psi, rho, p.body_radius - rho};
    ObjectNavStep out;

    const sensing::Scan centered = sensing::recenter_scan(scan, state.psi, rho);
    const Vec2 xc = centered.origin;
    out.center = xc;

    const double d = sensing::boundary_distance(centered, p.body_radius);
    auto [alpha, path_goal] = reactive::projected_path_goal(path, xc, d, mode.alpha_last);
    mode.alpha_last = alpha;

    Vec2 goal;
    if (mode.mode == reactive::Mode::path_following) {
        if (d < p.eps) {
            const auto wf = sensing::wall_frame(centered, p.body_radius);
            mode.mode = reactive::Mode::wall_following;
            mode.alpha_saved = alpha;
            mode.direction = reactive::choose_wall_direction(wf.tangent, path.tangent(alpha));
        }
        const auto region = sensing::local_free_space(centered, p.body_radius);
        goal = region.project(path_goal);
    } else {
        const auto wf = sensing::wall_frame(centered, p.body_radius);
        goal = reactive::wall_goal(wf.offset_point, wf.normal, wf.tangent, p.eps, mode.direction);
        out.wall_active = true;
        out.wall_law_u = -p.k * (xc - goal);
        out.wall_tangent = wf.tangent;
        out.wall_hit = wf.hit;
        if (alpha > mode.alpha_saved) mode.mode = reactive::Mode::path_following;
    }

    out.u_virtual = -p.k * (xc - goal);
    const auto uc = virtual_to_actual(jacobian_center(frame), out.u_virtual);
    out.command.type = reactive::Command::Type::unicycle;
    out.command.v = uc.v;
    out.command.omega = uc.omega;

    mode.reached = (xc - path.end()).norm() <= frame.r + p.delta;
    out.mode = mode;
    out.d = d;
    out.alpha = alpha;
    out.goal = goal;
    return out;
}

reactive::UnicycleCommand final_positioning_law(const GraspFrame& f, Vec2 target, double k) {
    const Vec2 u = -k * (object_position(f) - target);
    return virtual_to_actual(jacobian_object(f), u);
}

}  // namespace warebot::grasp
