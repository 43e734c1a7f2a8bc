#pragma once

#include <iosfwd>

#include "warebot/sim.hpp"

namespace warebot::io {

/// Static figure of a run: workspace outline, known obstacles black, unknown
/// obstacles grey, reference paths purple, robot trajectory blue, transported
/// object trajectory red. Coordinates are meters, y-up, viewBox padded 5%.
void write_svg(std::ostream& os, const world::Scenario& scenario, const executive::Plan& plan,
               const std::vector<sim::Trajectory>& trajectories);

}  // namespace warebot::io
