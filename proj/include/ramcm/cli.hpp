#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ramcm/classpoly.hpp"
#include "ramcm/error.hpp"

namespace ramcm {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitPrecondition = 2,
  kExitPrecision = 3,
  kExitSearch = 4,
  kExitCache = 5,
};

int exit_code_for(ErrorKind kind);

/// Parses "all", "none" or a comma list of family tags.
std::vector<Family> parse_family_list(const std::string& spec);

/// Entry point of the ramcm tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramcm
