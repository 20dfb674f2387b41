#ifndef SHORTINT_CLI_HPP
#define SHORTINT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace shortint {

/// Runs one verb (args excludes the program name). Reports go to out,
/// diagnostics and usage text to err. Returns 0 on success, 1 when a check
/// or computation fails, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shortint

#endif
