#pragma once

#include <iosfwd>

namespace levelcost {

enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitInput = 2 };

/// Entry point of the `levelcost` tool, parameterised on its streams so it
/// can be driven in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levelcost
