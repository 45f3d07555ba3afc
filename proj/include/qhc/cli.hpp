#pragma once

#include <string>
#include <vector>

namespace qhc::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNoConvergence = 3;

int run(int argc, const char* const* argv);
/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace qhc::cli
