#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmbd::cli {

enum ExitCode : int {
  kOk = 0,
  kPrecondition = 2,
  kNonConvergence = 3,
  kCertification = 4,
};

/// Parses and executes one invocation (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmbd::cli
