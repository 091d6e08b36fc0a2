#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "certhull/analysis.hpp"
#include "certhull/gen.hpp"
#include "json.hpp"

namespace certhull {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitGeneralPosition = 3,
  kExitVerification = 4,
};

/// Everything one hull or analyze invocation reports about one instance.
struct RunReport {
  std::optional<GenSpec> spec;
  std::optional<std::uint64_t> file_hash;  // FNV-1a 64 of the input bytes
  std::size_t n = 0;
  bool verified = false;
  std::vector<std::string> violations;
  std::vector<std::uint64_t> branches;  // one entry per array run
  std::optional<BoundsReport> bounds;
  std::uint64_t wall_ns = 0;
};

nlohmann::ordered_json run_report_to_json(const RunReport& r);

std::uint64_t fnv1a64(std::string_view bytes);

nlohmann::ordered_json forest_to_json(const QuadForest& f);

/// Entry point of the command-line tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace certhull
