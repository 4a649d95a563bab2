#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace riemannx::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid_arguments = 1;
inline constexpr int exit_assertion_failed = 2;

/// Names accepted as the first argument.
const std::vector<std::string>& experiment_names();

/// Parses `args` (without the program name), runs one experiment and writes
/// its CSV to `--output` or to `out`. Diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace riemannx::cli
