#pragma once
/**
 * @file reactive.hpp
 * @brief Low-level controllers: holonomic goal law, projected-path goal,
 *        wall-following law with direction memory, unicycle laws, and the
 *        path-following / wall-following mode automaton.
 */

#include <optional>
#include <utility>

#include "warebot/geometry.hpp"
#include "warebot/sensing.hpp"
#include "warebot/world.hpp"

namespace warebot::reactive {

using geom::ConvexRegion;
using geom::RefPath;
using geom::Vec2;

enum class Mode { path_following, wall_following };

/// Automaton state carried between control evaluations. The saved path index
/// and direction flag are meaningful only while wall following; the direction
/// stays fixed for the whole episode.
struct NavMode {
    Mode mode = Mode::path_following;
    double alpha_saved = 0.0;  // path index at wall-follow entry
    int direction = 0;         // +1 CCW, -1 CW
    double alpha_last = 0.0;   // retained projected-path index (fallback on ball miss)
    bool reached = false;      // terminal condition ||x - P(1)|| <= delta observed
};

struct Command {
    enum class Type { holonomic, unicycle };
    Type type = Type::unicycle;
    Vec2 u;              // planar velocity, holonomic commands
    double v = 0.0;      // forward speed (>= 0 for the unicycle law)
    double omega = 0.0;  // yaw rate
};

struct NavParams {
    double k = 2.0;
    double eps = 0.1;
    double delta = 0.01;
    double body_radius = 0.25;
    bool holonomic = false;
};

/// Furthest path point inside the free ball around x. When the ball misses
/// the path the previous index is retained and its point returned.
std::pair<double, Vec2> projected_path_goal(const RefPath& path, Vec2 x, double d_free,
                                            double alpha_prev);

/// u = -k (x - projection of goal onto the region).
Vec2 holonomic_law(Vec2 x, const ConvexRegion& region, Vec2 goal, double k);

/// +1 (CCW) when the initial wall tangent agrees with the path tangent.
int choose_wall_direction(Vec2 t_w0, Vec2 t_path);

/// Boundary point of the offset disk targeted while wall following:
/// x_offset + (eps/2) n_w + a (eps sqrt(3)/2) t_w.
Vec2 wall_goal(Vec2 x_offset, Vec2 n_w, Vec2 t_w, double eps, int a);

/// u = -k (x - wall_goal(...)); tangential component is k*a*eps*sqrt(3)/2.
Vec2 wall_following_law(Vec2 x, const sensing::WallFrame& frame, double eps, int a, double k);

struct UnicycleCommand {
    double v = 0.0;
    double omega = 0.0;
};

/**
 * Forward-only unicycle law toward a goal. The speed projects the goal onto
 * the heading-line slice of region_v and clamps backward motion to zero; the
 * turn rate steers toward the average of the goal's projections onto
 * region_omega and region_l, and is zero when that averaged point lies dead
 * ahead.
 */
UnicycleCommand unicycle_law(Vec2 x, double psi, const ConvexRegion& region_v,
                             const ConvexRegion& region_omega, const ConvexRegion& region_l,
                             Vec2 goal, double k);

/// Per-step diagnostics alongside the command and the updated automaton state.
struct NavStep {
    Command command;
    NavMode mode;
    double d = 0.0;      // sensed clearance used by the automaton
    double alpha = 0.0;  // projected-path index
    Vec2 goal;           // active goal point
    bool wall_active = false;
    Vec2 wall_law_u;     // holonomic wall law value (diagnostic in unicycle mode)
    Vec2 wall_tangent;
    sensing::RayHit wall_hit;
};

/// One evaluation of the mode automaton: computes the clearance and path
/// index, switches modes (enter when d < eps saving the index and direction,
/// exit when the index passes the saved one), and emits the command for the
/// configured robot model.
NavStep navigate_step(const world::RobotState& state, const RefPath& path,
                      const sensing::Scan& scan, NavMode mode, const NavParams& params);

}  // namespace warebot::reactive
