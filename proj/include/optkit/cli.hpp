#ifndef OPTKIT_CLI_HPP
#define OPTKIT_CLI_HPP

#include <iosfwd>

namespace optkit {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;  // failed checks or internal numerical errors
inline constexpr int kExitInput = 2;       // malformed arguments, schema or input errors

// Runs one subcommand (audit, gns, twin, tomo, pair). The report goes to
// `out` unless --json names a file; diagnostics go to `err`.
int execute(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optkit

#endif  // OPTKIT_CLI_HPP
