#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace btn::cli {

enum ExitCode : int {
  kOk = 0,
  kRoundTripFailure = 1,
  kUsage = 2,
  kIo = 3,
  kFormat = 4,
  kCorruption = 5,
};

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace btn::cli
