#pragma once

#include "eostk/states.hpp"

#include <string>

namespace eostk {

/// Matrix-container file for Gaussian states (JSON: grid, M, A, mean as
/// re/im pairs). Round-trips losslessly.
void write_state_json(const std::string& path, const GaussianState& state);
GaussianState read_state_json(const std::string& path);

} // namespace eostk
