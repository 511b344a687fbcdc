#pragma once

// Command-line entry point shared by the tool and the tests.

#include <ostream>
#include <string>
#include <vector>

namespace tickcoint {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// args excludes the program name. Returns the process exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tickcoint
