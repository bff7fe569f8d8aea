#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dicke::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 1,
    kNumericalFailure = 2,
    kAcceptanceMiss = 3,
};

/// Entry point shared by the executable and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "min:max:step" (or a single value) into an inclusive grid.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace dicke::cli
