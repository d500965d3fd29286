#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubesplit::cli {

inline constexpr const char* version = "0.1.0";

enum ExitCode : int { ok = 0, refuted = 1, usage_error = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The help text printed by --help.
std::string commands_manifest();

} // namespace cubesplit::cli
