#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levyh::cli {

/// Runs the command-line interface; returns the process exit code
/// (0 ok, 2 spec/usage error, 3 numerical failure, 4 hypothesis not
/// verified).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace levyh::cli
