#pragma once
/**
 * @file sim.hpp
 * @brief Deterministic closed-loop integration: fixed-step RK4 of the
 *        unicycle motion under zero-order-hold commands, grasp constraint
 *        enforcement, invariant monitors, and trajectory recording.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include "warebot/executive.hpp"
#include "warebot/grasp.hpp"
#include "warebot/reactive.hpp"

namespace warebot::sim {

using geom::Vec2;

/// Control phase a record was produced in.
enum class Phase { navigate, align, final_position };

struct Record {
    double t = 0.0;
    Vec2 x;
    double psi = 0.0;
    Phase phase = Phase::navigate;
    reactive::Mode mode = reactive::Mode::path_following;
    int direction = 0;
    double alpha = 0.0;
    double v = 0.0;
    double omega = 0.0;
    double d_sensed = 0.0;
    double clearance = 0.0;
    bool has_object = false;
    Vec2 object;
    // Wall-following diagnostics (valid when wall_active).
    bool wall_active = false;
    Vec2 wall_law_u;
    Vec2 wall_tangent;
    sensing::RayHit wall_hit;
    int episode = 0;  // wall-follow episode counter within the action
};

struct Trajectory {
    std::vector<Record> records;
};

enum class Status { success, timeout, collision };

struct ActionOutcome {
    Status status = Status::success;
    long steps = 0;
    int wall_episodes = 0;
    double min_clearance = std::numeric_limits<double>::infinity();
    double placement_error = 0.0;  // terminal distance to the action's target
    double snap = 0.0;             // gripper engagement correction magnitude
    std::string message;
};

struct PlanSummary {
    std::vector<ActionOutcome> outcomes;
    double min_clearance = std::numeric_limits<double>::infinity();
    int wall_episodes = 0;
    std::vector<double> placement_errors;  // per object, distance to goal at the end
    bool ok = true;
};

/// One fixed-step RK4 update of (x, psi) under a constant command; psi is
/// wrapped to (-pi, pi]. Holonomic commands translate x and keep psi.
world::RobotState step(const world::RobotState& state, const reactive::Command& cmd, double h);

/// Owns the mutable world state for one scenario run. Monitors ground-truth
/// clearance every step and aborts on penetration beyond 1e-6.
class Engine {
  public:
    explicit Engine(world::Scenario scenario);

    const world::Scenario& scenario() const { return scenario_; }
    const world::WorldState& state() const { return state_; }
    world::WorldState& mutable_state() { return state_; }

    sensing::Scan scan() const;
    /// Integrate one step and re-impose the grasp constraint.
    void advance(const reactive::Command& cmd);
    double clearance() const;

    /// Attach the object rigidly at the exact contact distance; returns the
    /// snap magnitude (how far the object center moved).
    double engage_gripper(int object_id);
    void disengage_gripper();

    double time() const { return static_cast<double>(step_count_) * scenario_.params.h; }
    long step_count() const { return step_count_; }
    void reset_clock() { step_count_ = 0; }

  private:
    world::Scenario scenario_;
    world::WorldState state_;
    long step_count_ = 0;
};

/// Executes one symbolic action to its terminal condition or the step cap.
/// Move-to-object runs navigation on the contact-truncated path, then the
/// in-place alignment rotation, then engages the gripper; position-object
/// runs the transport loop and the final placement law, then releases.
std::pair<Trajectory, ActionOutcome> run_action(Engine& engine, const executive::SymbolicAction& action);

std::pair<std::vector<Trajectory>, PlanSummary> run_plan(Engine& engine, const executive::Plan& plan);

/// CSV schema: t,x,y,psi,mode,a,alpha,v,omega,d_sensed,clearance,obj_x,obj_y
/// (SI units, 9 significant digits).
void write_csv(std::ostream& os, const Trajectory& trajectory);

std::string status_name(Status s);

}  // namespace warebot::sim
