#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "detequiv/selftest.hpp"

namespace detequiv {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kFixtureEnv = "DETEQUIV_FIXTURES";

/// Exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// Runs one command. args excludes the program name. Reports go to out,
/// warnings and errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const SelftestOptions& selftest = {});

}  // namespace detequiv
