#ifndef CAUSAL_CLI_HPP
#define CAUSAL_CLI_HPP

#include <string>
#include <vector>

namespace causal {

// Stable exit-code contract, listed in --help.
namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kFailure = 1;  // generic failure; mec-eq: not equivalent
inline constexpr int kInfeasible = 2;
inline constexpr int kAmbiguousMec = 3;
inline constexpr int kParseError = 4;
inline constexpr int kGuardExceeded = 5;
}  // namespace exit_code

int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace causal

#endif  // CAUSAL_CLI_HPP
