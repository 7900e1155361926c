#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metriq::cli {

/// Exit codes. Domain errors exit with kDomainError and print their
/// category on stderr as "error: <Category>: <message>".
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kInternalError = 70;

/// Runs the metriq command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metriq::cli
