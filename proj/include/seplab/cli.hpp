#pragma once

#include <string>
#include <vector>

// Command-line front end: config parsing/validation, experiment dispatch,
// and artifact emission. Exposed as a library call so tests can drive it
// without spawning processes.

namespace seplab {

// args as they would appear after the program name, e.g.
// {"pipeline", "--config", "cfg.json", "--seed", "42", "--out", "out"}.
// Returns the process exit status; validation failures print a field-level
// message to stderr and return nonzero.
int run_cli(const std::vector<std::string>& args);

}  // namespace seplab
