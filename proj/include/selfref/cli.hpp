#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "selfref/trace.hpp"

namespace selfref::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kCheckFailed = 3 };

struct RunConfig {
  std::string scheme = "prime";
  std::uint64_t bound = 1000;
  std::uint64_t maxSteps = 8;
  std::uint64_t muCutoff = kDefaultMuCutoff;
  std::string subReading = "recompute";
  std::string format = "text";
  std::optional<std::string> seedTerms;
  std::uint64_t gridSize = 4;
  std::uint64_t sigmaRow = 0;
};

Json toJson(const RunConfig& c);

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selfref::cli
