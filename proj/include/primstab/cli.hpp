#pragma once

// Command-line driver. Exit codes: 0 success or affirmative verdict,
// 1 negative verdict, 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace primstab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// Worker cap from PRIMSTAB_THREADS, else the hardware concurrency.
int thread_count_from_env();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primstab::cli
