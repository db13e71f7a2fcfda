#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace mwu {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitCertificate = 2;
inline constexpr int kExitInput = 3;  // parse errors and non-monotone streams

// Runs one command; the JSON report goes to `out`, diagnostics to stderr.
int run_cli(int argc, char** argv, std::ostream& out);

// 64-bit FNV-1a over the IEEE bit patterns, as 16 hex digits.
std::string vector_digest(std::span<const double> v);

}  // namespace mwu
