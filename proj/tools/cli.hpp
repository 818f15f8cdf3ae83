#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oatk {

/// Runs the command-line tool. Exit codes: 0 success (and verification pass),
/// 1 verification failure or internal error, 2 invalid configuration/flags,
/// 3 work or cell cap exceeded, 4 search exhaustion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace oatk
