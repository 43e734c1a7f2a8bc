#pragma once
/**
 * @file grasp.hpp
 * @brief Gripping-contact kinematics: object and circumscribed-center
 *        positions, their Jacobians, virtual-to-actual command translation,
 *        and the robot-object navigation loop body.
 *
 * The grasp is a rigid kinematic attachment: the pushed object's center sits
 * at distance rho + r along the robot heading, and the circumscribed-circle
 * center (the control point while transporting) at distance rho.
 */

#include "warebot/reactive.hpp"

namespace warebot::grasp {

using geom::RefPath;
using geom::Vec2;

struct GraspFrame {
    Vec2 x;            // robot center
    double psi = 0.0;  // robot heading == robot-object bearing
    double rho = 0.0;  // object radius
    double r = 0.0;    // robot radius
};

struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    Vec2 mul(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }
};

/// Object center: x + (rho + r)(cos psi, sin psi).
Vec2 object_position(const GraspFrame& f);
/// Circumscribed-circle center: x + rho (cos psi, sin psi).
Vec2 center_position(const GraspFrame& f);

/// d(object)/dt = T * (v, omega); det = rho + r.
Mat2 jacobian_object(const GraspFrame& f);
/// d(center)/dt = T * (v, omega); det = rho (singular for a point object).
Mat2 jacobian_center(const GraspFrame& f);

/// Solves T u_ku = u_virtual. Throws SingularJacobian when det(T) vanishes.
reactive::UnicycleCommand virtual_to_actual(const Mat2& T, Vec2 u_virtual);

struct ObjectNavStep {
    reactive::Command command;   // actual (v, omega)
    reactive::NavMode mode;
    Vec2 u_virtual;              // planar command for the center point
    Vec2 center;                 // circumscribed-circle center used this step
    double d = 0.0;
    double alpha = 0.0;
    Vec2 goal;
    bool wall_active = false;
    Vec2 wall_law_u;
    Vec2 wall_tangent;
    sensing::RayHit wall_hit;
};

/**
 * One evaluation of the transport automaton: re-centers the scan to the
 * circumscribed-circle center, erodes by r + rho, runs the same mode
 * switching as the free-robot automaton with goals projected into the local
 * free space, and maps the virtual center-point command through the inverse
 * center Jacobian. Terminal condition: ||center - P(1)|| <= r + delta.
 * Throws SingularJacobian when rho == 0.
 */
ObjectNavStep navigate_robot_object_step(const world::RobotState& state, double rho,
                                         const RefPath& path, const sensing::Scan& scan,
                                         reactive::NavMode mode, const reactive::NavParams& params);

/// Final placement law: drives the object center straight at the target and
/// translates through the (always invertible) object Jacobian.
reactive::UnicycleCommand final_positioning_law(const GraspFrame& f, Vec2 target, double k);

}  // namespace warebot::grasp
