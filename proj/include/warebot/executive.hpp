#pragma once
/**
 * @file executive.hpp
 * @brief Symbolic action layer: the deliberative plan over the known map
 *        (workspace boundary and known obstacles only) and its action types.
 *
 * The planner is a grid search (8-connected, cell <= 0.1 m) with shortcut
 * smoothing into line segments; it is deliberately unaware of unknown
 * obstacles, which the reactive layer handles online.
 */

#include <string>
#include <vector>

#include "warebot/geometry.hpp"
#include "warebot/world.hpp"

namespace warebot::executive {

using geom::RefPath;
using geom::Vec2;

enum class ActionKind { move_to_object, position_object, move };

struct SymbolicAction {
    ActionKind kind = ActionKind::move;
    int object_id = 0;  // meaningful for move_to_object / position_object
    RefPath path;
};

struct Plan {
    std::vector<SymbolicAction> actions;
};

/// Clearance every planned path keeps from the known map:
/// robot radius + max object radius + 2 eps.
double planning_margin(const world::Scenario& s);

/**
 * Known-map path between two points with the planning margin, built by grid
 * search plus greedy shortcut smoothing (segments validated at 1 cm
 * sampling). Throws NoPath when no corridor of the required clearance exists.
 */
RefPath plan_path(const world::Scenario& s, Vec2 start, Vec2 goal);

/**
 * Action sequence over the objects in input order: for each object a
 * move-to-object path from the predicted robot position to the object center
 * and a positioning path from the object to its goal, plus an optional
 * terminal move to the nest point.
 */
Plan deliberative_plan(const world::Scenario& s);

std::string action_kind_name(ActionKind kind);

}  // namespace warebot::executive
