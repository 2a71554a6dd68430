#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ceam/cli/config.hpp"

namespace ceam::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitPartialEnsemble = 4,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "CEAM_SIM_OUT_DIR";

const char* version();

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;  // CSV outputs, sidecar last
  nlohmann::json metadata;
};

/// Executes one configured run and writes its CSV tables and JSON sidecar into
/// `out_dir`. Numerical failures propagate as ceam::Error.
RunOutcome run(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Fixed-format CSV number: shortest form with 17 significant digits.
std::string format_number(double v);

/// Full command-line entry point. Errors are reported as one JSON object on
/// `err`; the return value is the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ceam::cli
