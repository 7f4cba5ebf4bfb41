#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mbuw::cli {

/// Runs the command line `args` (program name excluded) and returns the
/// process exit code: 0 success, 2 input error, 3 domain error, 4 numerical
/// failure. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace mbuw::cli
