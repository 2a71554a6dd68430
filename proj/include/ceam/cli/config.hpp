#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ceam/core_model.hpp"
#include "ceam/disorder.hpp"

namespace ceam::cli {

enum class Mode { Sweep, Scaling, WorkingPoint, Disorder, Estimate, ValidateLinearResponse };

const char* to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

/// Bad input file: unparsable JSON or a schema violation. `path` is a JSON
/// pointer to the offending field (empty for parse errors).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Units { Internal, SI };

/// Per-atom override; unset fields inherit the block-level homogeneous value.
struct AtomOverride {
  std::optional<double> detuning, gamma, gamma_prime, position;  // internal
  std::optional<double> transition_frequency_hz, gamma_over_2pi_hz,
      gamma_prime_over_2pi_hz, position_m;                       // si
};

struct SystemBlock {
  Units units = Units::Internal;
  int n_atoms = 10;
  // internal
  double gamma = 1.0;
  double gamma_prime = 0.0;
  double detuning = 1.0;
  double spacing = kTwoPi;
  double probe_frequency = kDefaultProbeFrequency;
  std::optional<double> boundary_distance;
  // si
  SIConfig si;
  std::optional<double> boundary_distance_m;
  std::vector<AtomOverride> atoms;
};

struct DisorderBlock {
  Units units = Units::Internal;
  double sigma_omega = 0.0, sigma_gamma = 0.0, sigma_x = 0.0;  // internal
  double sigma_frequency_hz = 0.0, sigma_gamma_over_2pi_hz = 0.0,
         sigma_position_m = 0.0;                              // si
  double truncation = 3.0;
  int n_samples = 20;
};

struct GridBlock {
  int points = 2001;
  std::optional<double> kx_min, kx_max;
  double span = 3.141592653589793;  // used when no explicit range is given
};

struct EstimationBlock {
  std::int64_t shots = 100000;
  int repetitions = 500;
  double prior_half_width = 1e-3;
  std::optional<double> reference_phase;  // default: quadrature readout
};

struct OutputBlock {
  std::optional<std::string> dir;
  std::optional<std::string> prefix;
  std::string format = "csv";
};

struct RunConfig {
  Mode mode = Mode::Sweep;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  SystemBlock system;
  std::optional<DisorderBlock> disorder;
  GridBlock grid;
  std::optional<EstimationBlock> estimation;
  std::vector<int> n_list{4, 8, 16, 32, 64};
  double linear_response_scale = 1e-6;
  OutputBlock output;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Fully resolved config with every default written out; feeding it back to
/// parse_config reproduces the run.
nlohmann::json to_json(const RunConfig& cfg);

/// JSON Schema (draft 2020-12) describing the config file.
nlohmann::json config_schema();

SystemSpec build_system(const SystemBlock& block);
DisorderSpec build_disorder(const DisorderBlock& block, const SystemSpec& system,
                            std::uint64_t master_seed);
IdealArraySpec ideal_of(const SystemSpec& spec);
std::vector<double> build_grid(const GridBlock& grid, const SystemSpec& spec);

}  // namespace ceam::cli
