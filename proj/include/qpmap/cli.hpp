#ifndef QPMAP_CLI_HPP
#define QPMAP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qpmap::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // not symplectic / verification failed
inline constexpr int kInputError = 2;
inline constexpr int kInternalError = 3;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`; data goes to --out when given, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g" formatting used for every floating-point CSV field.
std::string format_double(double v);

}  // namespace qpmap::cli

#endif  // QPMAP_CLI_HPP
