#pragma once

#include <iosfwd>
#include <string>

#include "warebot/world.hpp"

namespace warebot::io {

/// Parses the versioned JSON scenario document. Unknown fields are rejected.
/// Throws MalformedScenario with a field diagnostic.
world::Scenario load_scenario(const std::string& text);
world::Scenario load_scenario_file(const std::string& path);

/// Canonical re-emission; load(save(s)) reproduces the same scenario.
std::string save_scenario(const world::Scenario& s);

}  // namespace warebot::io
