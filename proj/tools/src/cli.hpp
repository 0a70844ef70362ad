#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wsm::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kFailure = 2;

/// Runs one subcommand. Exit codes: 0 success, 2 validation or domain
/// failure, 1 usage error. Errors go to `err` as "error[code]: message".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsm::cli
