#include "warebot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace warebot::sim {

namespace {

constexpr double kPenetrationTol = 1e-6;

world::RobotState rk4_unicycle(const world::RobotState& state, double v, double omega, double h) {
    // d/dt (x, y, psi) = (v cos psi, v sin psi, omega), constant inputs.
    const auto f = [&](double psi) { return Vec2{v * std::cos(psi), v * std::sin(psi)}; };
    const double psi0 = state.psi;
    const Vec2 k1 = f(psi0);
    const Vec2 k2 = f(psi0 + 0.5 * h * omega);
    const Vec2 k3 = k2;  // psi stage values coincide for constant omega
    const Vec2 k4 = f(psi0 + h * omega);

    world::RobotState next = state;
    next.x = state.x + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
    next.psi = geom::wrap_angle(psi0 + h * omega);
    return next;
}

struct StepDiag {
    reactive::Command cmd;
    Phase phase = Phase::navigate;
    reactive::Mode mode = reactive::Mode::path_following;
    int direction = 0;
    double alpha = 0.0;
    double d_sensed = 0.0;
    bool wall_active = false;
    Vec2 wall_law_u;
    Vec2 wall_tangent;
    sensing::RayHit wall_hit;
};

class ActionRunner {
  public:
    ActionRunner(Engine& engine, Trajectory& trajectory, ActionOutcome& outcome)
        : engine_(engine), trajectory_(trajectory), outcome_(outcome) {}

    /// Applies the command, appends monitors, and reports whether the run may
    /// continue (false on collision or step cap).
    bool tick(const StepDiag& diag) {
        engine_.advance(diag.cmd);
        ++outcome_.steps;

        const auto& st = engine_.state();
        Record rec;
        rec.t = engine_.time();
        rec.x = st.robot.x;
        rec.psi = st.robot.psi;
        rec.phase = diag.phase;
        rec.mode = diag.mode;
        rec.direction = diag.direction;
        rec.alpha = diag.alpha;
        if (diag.cmd.type == reactive::Command::Type::holonomic) {
            rec.v = diag.cmd.u.norm();
            rec.omega = 0.0;
        } else {
            rec.v = diag.cmd.v;
            rec.omega = diag.cmd.omega;
        }
        rec.d_sensed = diag.d_sensed;
        rec.clearance = engine_.clearance();
        if (st.robot.grasped) {
            rec.has_object = true;
            rec.object = object_center(*st.robot.grasped);
        }
        rec.wall_active = diag.wall_active;
        rec.wall_law_u = diag.wall_law_u;
        rec.wall_tangent = diag.wall_tangent;
        rec.wall_hit = diag.wall_hit;
        if (diag.wall_active && !was_wall_) ++outcome_.wall_episodes;
        was_wall_ = diag.wall_active;
        rec.episode = outcome_.wall_episodes;
        trajectory_.records.push_back(rec);

        outcome_.min_clearance = std::min(outcome_.min_clearance, rec.clearance);
        if (rec.clearance < -kPenetrationTol) {
            outcome_.status = Status::collision;
            outcome_.message = "ground-truth clearance " + std::to_string(rec.clearance);
            return false;
        }
        if (outcome_.steps >= engine_.scenario().params.max_steps) {
            outcome_.status = Status::timeout;
            outcome_.message = "step cap reached";
            return false;
        }
        return true;
    }

    Vec2 object_center(int id) const {
        const auto& s = engine_.scenario();
        for (std::size_t i = 0; i < s.objects.size(); ++i) {
            if (s.objects[i].id == id) return engine_.state().object_centers[i];
        }
        return {};
    }

  private:
    Engine& engine_;
    Trajectory& trajectory_;
    ActionOutcome& outcome_;
    bool was_wall_ = false;
};

reactive::NavParams nav_params(const world::Scenario& s, double body_radius) {
    reactive::NavParams p;
    p.k = s.params.k;
    p.eps = s.epsilon();
    p.delta = s.params.delta;
    p.body_radius = body_radius;
    p.holonomic = s.params.holonomic;
    return p;
}

/// Navigation loop shared by the free-robot phases of every action.
bool navigate_robot(Engine& engine, ActionRunner& runner, const geom::RefPath& path) {
    const auto& s = engine.scenario();
    const auto params = nav_params(s, s.robot_radius);
    reactive::NavMode mode;
    if ((engine.state().robot.x - path.end()).norm() <= params.delta) return true;
    while (true) {
        const auto scan = engine.scan();
        const auto ns = reactive::navigate_step(engine.state().robot, path, scan, mode, params);
        StepDiag diag;
        diag.cmd = ns.command;
        diag.phase = Phase::navigate;
        diag.mode = ns.mode.mode;
        diag.direction = ns.mode.direction;
        diag.alpha = ns.alpha;
        diag.d_sensed = ns.d;
        diag.wall_active = ns.wall_active;
        diag.wall_law_u = ns.wall_law_u;
        diag.wall_tangent = ns.wall_tangent;
        diag.wall_hit = ns.wall_hit;
        mode = ns.mode;
        if (!runner.tick(diag)) return false;
        if ((engine.state().robot.x - path.end()).norm() <= params.delta) return true;
    }
}

bool navigate_robot_object(Engine& engine, ActionRunner& runner, const geom::RefPath& path, double rho) {
    const auto& s = engine.scenario();
    const auto params = nav_params(s, s.robot_radius + rho);
    reactive::NavMode mode;
    while (true) {
        const auto& robot = engine.state().robot;
        const grasp::GraspFrame f{robot.x, robot.psi, rho, s.robot_radius};
        if ((grasp::center_position(f) - path.end()).norm() <= s.robot_radius + params.delta) return true;
        const auto scan = engine.scan();
        const auto ns = grasp::navigate_robot_object_step(robot, rho, path, scan, mode, params);
        StepDiag diag;
        diag.cmd = ns.command;
        diag.phase = Phase::navigate;
        diag.mode = ns.mode.mode;
        diag.direction = ns.mode.direction;
        diag.alpha = ns.alpha;
        diag.d_sensed = ns.d;
        diag.wall_active = ns.wall_active;
        diag.wall_law_u = ns.wall_law_u;
        diag.wall_tangent = ns.wall_tangent;
        diag.wall_hit = ns.wall_hit;
        mode = ns.mode;
        if (!runner.tick(diag)) return false;
    }
}

bool align_with_object(Engine& engine, ActionRunner& runner, Vec2 object_center) {
    const auto& s = engine.scenario();
    const double k = s.params.k;
    const double delta = s.params.delta;
    while (true) {
        const auto& robot = engine.state().robot;
        const double phi = geom::bearing(object_center - robot.x);
        const double err = geom::wrap_angle(phi - robot.psi);
        if (std::abs(err) <= delta) return true;
        StepDiag diag;
        diag.cmd.type = reactive::Command::Type::unicycle;
        diag.cmd.v = 0.0;
        diag.cmd.omega = k * err;  // stabilizing in-place rotation toward the object
        diag.phase = Phase::align;
        if (!runner.tick(diag)) return false;
    }
}

bool final_position_object(Engine& engine, ActionRunner& runner, int object_id, Vec2 target) {
    const auto& s = engine.scenario();
    const world::MovableObject* obj = s.object_by_id(object_id);
    while (true) {
        const auto& robot = engine.state().robot;
        const grasp::GraspFrame f{robot.x, robot.psi, obj->radius, s.robot_radius};
        if ((grasp::object_position(f) - target).norm() <= s.params.delta) return true;
        const auto uc = grasp::final_positioning_law(f, target, s.params.k);
        StepDiag diag;
        diag.cmd.type = reactive::Command::Type::unicycle;
        diag.cmd.v = uc.v;
        diag.cmd.omega = uc.omega;
        diag.phase = Phase::final_position;
        if (!runner.tick(diag)) return false;
    }
}

}  // namespace

world::RobotState step(const world::RobotState& state, const reactive::Command& cmd, double h) {
    if (h <= 0.0) throw DomainError("sim::step: nonpositive step size");
    if (cmd.type == reactive::Command::Type::holonomic) {
        world::RobotState next = state;
        next.x = state.x + cmd.u * h;  // constant field: the RK4 update is exact
        return next;
    }
    return rk4_unicycle(state, cmd.v, cmd.omega, h);
}

Engine::Engine(world::Scenario scenario)
    : scenario_(std::move(scenario)), state_(world::WorldState::initial(scenario_)) {}

sensing::Scan Engine::scan() const {
    return sensing::lidar_scan(scenario_, state_, state_.robot.x);
}

void Engine::advance(const reactive::Command& cmd) {
    state_.robot = step(state_.robot, cmd, scenario_.params.h);
    ++step_count_;
    if (state_.robot.grasped) {
        for (std::size_t i = 0; i < scenario_.objects.size(); ++i) {
            if (scenario_.objects[i].id != *state_.robot.grasped) continue;
            const grasp::GraspFrame f{state_.robot.x, state_.robot.psi, scenario_.objects[i].radius,
                                      scenario_.robot_radius};
            state_.object_centers[i] = grasp::object_position(f);
        }
    }
}

double Engine::clearance() const {
    return world::collision_clearance(scenario_, state_);
}

double Engine::engage_gripper(int object_id) {
    for (std::size_t i = 0; i < scenario_.objects.size(); ++i) {
        if (scenario_.objects[i].id != object_id) continue;
        const grasp::GraspFrame f{state_.robot.x, state_.robot.psi, scenario_.objects[i].radius,
                                  scenario_.robot_radius};
        const Vec2 snapped = grasp::object_position(f);
        const double snap = (snapped - state_.object_centers[i]).norm();
        state_.object_centers[i] = snapped;
        state_.robot.gripper = true;
        state_.robot.grasped = object_id;
        return snap;
    }
    throw DomainError("engage_gripper: unknown object id");
}

void Engine::disengage_gripper() {
    state_.robot.gripper = false;
    state_.robot.grasped.reset();
}

std::pair<Trajectory, ActionOutcome> run_action(Engine& engine, const executive::SymbolicAction& action) {
    Trajectory trajectory;
    ActionOutcome outcome;
    ActionRunner runner(engine, trajectory, outcome);
    const auto& s = engine.scenario();

    switch (action.kind) {
        case executive::ActionKind::move_to_object: {
            if (engine.state().robot.gripper) throw DomainError("move_to_object: gripper already engaged");
            const world::MovableObject* obj = s.object_by_id(action.object_id);
            if (!obj) throw DomainError("move_to_object: unknown object id");
            std::size_t idx = 0;
            for (; idx < s.objects.size(); ++idx) {
                if (s.objects[idx].id == action.object_id) break;
            }
            const Vec2 p_obj = engine.state().object_centers[idx];
            const double contact = obj->radius + s.robot_radius;
            // Stop on the contact circle rather than at the object center.
            const auto alpha_cut = action.path.min_ball_param(p_obj, contact);
            geom::RefPath path = action.path;
            if (alpha_cut && *alpha_cut > 0.0) {
                path = action.path.truncate(*alpha_cut);
            } else if (alpha_cut) {
                path = geom::RefPath::point(action.path.start());
            }
            if (!navigate_robot(engine, runner, path)) break;
            if (!align_with_object(engine, runner, engine.state().object_centers[idx])) break;
            outcome.snap = engine.engage_gripper(action.object_id);
            outcome.placement_error = (engine.state().robot.x - path.end()).norm();
            break;
        }
        case executive::ActionKind::position_object: {
            const auto& robot = engine.state().robot;
            if (!robot.gripper || !robot.grasped || *robot.grasped != action.object_id) {
                throw DomainError("position_object: object not grasped");
            }
            const world::MovableObject* obj = s.object_by_id(action.object_id);
            if (!navigate_robot_object(engine, runner, action.path, obj->radius)) break;
            if (!final_position_object(engine, runner, action.object_id, obj->goal)) break;
            engine.disengage_gripper();
            std::size_t idx = 0;
            for (; idx < s.objects.size(); ++idx) {
                if (s.objects[idx].id == action.object_id) break;
            }
            outcome.placement_error = (engine.state().object_centers[idx] - obj->goal).norm();
            break;
        }
        case executive::ActionKind::move: {
            if (engine.state().robot.gripper) throw DomainError("move: gripper engaged");
            if (!navigate_robot(engine, runner, action.path)) break;
            outcome.placement_error = (engine.state().robot.x - action.path.end()).norm();
            break;
        }
    }
    return {std::move(trajectory), outcome};
}

std::pair<std::vector<Trajectory>, PlanSummary> run_plan(Engine& engine, const executive::Plan& plan) {
    std::vector<Trajectory> trajectories;
    PlanSummary summary;
    for (const auto& action : plan.actions) {
        auto [traj, outcome] = run_action(engine, action);
        summary.min_clearance = std::min(summary.min_clearance, outcome.min_clearance);
        summary.wall_episodes += outcome.wall_episodes;
        trajectories.push_back(std::move(traj));
        summary.outcomes.push_back(outcome);
        if (outcome.status != Status::success) {
            summary.ok = false;
            break;
        }
    }
    const auto& s = engine.scenario();
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
        summary.placement_errors.push_back((engine.state().object_centers[i] - s.objects[i].goal).norm());
    }
    return {std::move(trajectories), summary};
}

void write_csv(std::ostream& os, const Trajectory& trajectory) {
    os << "t,x,y,psi,mode,a,alpha,v,omega,d_sensed,clearance,obj_x,obj_y\n";
    char buf[512];
    for (const Record& r : trajectory.records) {
        const char* mode = "path";
        if (r.phase == Phase::align) {
            mode = "align";
        } else if (r.phase == Phase::final_position) {
            mode = "final";
        } else if (r.mode == reactive::Mode::wall_following) {
            mode = "wall";
        }
        std::snprintf(buf, sizeof(buf),
                      "%.9g,%.9g,%.9g,%.9g,%s,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      r.t, r.x.x, r.x.y, r.psi, mode, r.direction, r.alpha, r.v, r.omega,
                      r.d_sensed, r.clearance, r.has_object ? r.object.x : std::nan(""),
                      r.has_object ? r.object.y : std::nan(""));
        os << buf;
    }
}

std::string status_name(Status s) {
    switch (s) {
        case Status::success: return "success";
        case Status::timeout: return "timeout";
        case Status::collision: return "collision";
    }
    return "unknown";
}

}  // namespace warebot::sim
