#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topsurg::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kInconclusive = 3,
  kInternal = 4,
};

// Runs one invocation. args excludes the program name. Positional file
// arguments default to `in`; "-" also means `in`. Errors are written to err as
// a single line starting "ERROR <exit code>:".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace topsurg::cli
