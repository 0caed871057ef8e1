#pragma once

// `fhm` subcommands. Results go to `out` as JSON (schema "fhm-result/1") or
// CSV; diagnostics go to `err`.

#include <ostream>

namespace fh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolated = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fh::cli
