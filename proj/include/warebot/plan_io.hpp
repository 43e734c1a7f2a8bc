#pragma once

#include <string>

#include "warebot/executive.hpp"

namespace warebot::io {

/// Line format: `KIND id n x0 y0 ... x{n-1} y{n-1}` with the path's polyline
/// breakpoints. `with_samples` appends commented uniformly-sampled points for
/// inspection.
std::string save_plan(const executive::Plan& plan, bool with_samples = false);
executive::Plan load_plan(const std::string& text);
executive::Plan load_plan_file(const std::string& path);

}  // namespace warebot::io
