#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hse {

// Runs one subcommand (args excludes the program name) and writes a report
// of "key: value" lines to `out`. Exit codes: 0 when every check passes,
// 1 when a mathematical check fails, 2 on usage or parse errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hse
