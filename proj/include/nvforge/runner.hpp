#pragma once

#include <string>

#include "nvforge/config.hpp"

namespace nvforge {

// Executes one command against the given settings and returns its primary
// output text: deterministic JSON for most commands, config lines for
// `calibrate`, CSV for `dataset-dump` in csv format. When `io.out` is set the
// text is also written to that path. Errors propagate as nvforge::Error.
//
// Commands: predict, optimize, design, fit-pl, fit-echo, absorption,
// calibrate, regress, report, dataset-dump.
std::string run_command(const std::string& command, const Settings& settings);

// True when `command` names a runnable command.
bool is_known_command(const std::string& command);

}  // namespace nvforge
