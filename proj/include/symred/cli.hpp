#ifndef SYMRED_CLI_HPP
#define SYMRED_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace symred {

/// Exit statuses of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_internal_error = 2;

/// The symred command line. args excludes the program name. Results go to
/// out, diagnostics and statistics to err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace symred

#endif
