#include "ceam/cli/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ceam/disorder.hpp"
#include "ceam/error.hpp"
#include "ceam/estimator.hpp"
#include "ceam/scattering.hpp"
#include "ceam/sensitivity.hpp"

#ifndef CEAM_VERSION
#define CEAM_VERSION "0.0.0"
#endif

namespace ceam::cli {

using nlohmann::json;
namespace fs = std::filesystem;

const char* version() { return CEAM_VERSION; }

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

/// Rows are written with LF endings regardless of platform.
class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::initializer_list<std::string> header)
      : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row_begin_ = true;
    for (const auto& h : header) cell(h);
    end_row();
  }

  CsvWriter& cell(const std::string& s) {
    if (!row_begin_) out_ << ',';
    out_ << s;
    row_begin_ = false;
    return *this;
  }
  CsvWriter& num(double v) { return cell(format_number(v)); }
  CsvWriter& integer(long long v) { return cell(std::to_string(v)); }
  void end_row() {
    out_ << '\n';
    row_begin_ = true;
  }

 private:
  std::ofstream out_;
  bool row_begin_ = true;
};

std::string sample_name(const std::string& prefix, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_sample_%03zu.csv", index);
  return prefix + buf;
}

json run_sweep(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
               const std::string& prefix, std::vector<fs::path>& files) {
  const auto grid = build_grid(cfg.grid, spec);
  const auto sweep = phase_sweep(spec, grid, cfg.threads);
  const auto path = dir / (prefix + ".csv");
  CsvWriter csv(path, {"kx", "theta_unwrapped", "dtheta_dkx", "abs_R"});
  for (const auto& p : sweep) {
    csv.num(p.kx).num(p.theta_unwrapped).num(p.dtheta_dkx).num(p.abs_R).end_row();
  }
  files.push_back(path);
  return {{"points", sweep.size()}};
}

json run_scaling(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
                 const std::string& prefix, std::vector<fs::path>& files) {
  const auto ideal = ideal_of(spec);
  const auto result = scaling_sweep(cfg.n_list, ideal.detuning, ideal.gamma);
  const auto path = dir / (prefix + ".csv");
  CsvWriter csv(path, {"N", "peak_dtheta_dkx", "kx_opt"});
  for (const auto& p : result.points) {
    csv.integer(p.n_atoms).num(p.peak_sensitivity).num(p.kx_opt).end_row();
  }
  files.push_back(path);
  return {{"fit_slope", result.slope},
          {"fit_slope_n_ge_8", std::isnan(result.slope_large_n) ? json(nullptr)
                                                                : json(result.slope_large_n)}};
}

json run_working_point(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
                       const std::string& prefix, std::vector<fs::path>& files) {
  const auto ideal = ideal_of(spec);
  const auto ceam = ceam_coeffs(ideal);
  const auto wp = find_working_point(ceam);
  const auto check = verify_working_point(ceam, wp);
  const double shots = cfg.estimation ? static_cast<double>(cfg.estimation->shots) : 1.0;
  const auto report = sensitivity_report(ideal, wp.kx_opt, shots, spec.scale.wavenumber);
  const auto fin = finesse_report(std::abs(ceam.r), 1.0);

  const auto path = dir / (prefix + ".csv");
  CsvWriter csv(path, {"N", "detuning", "kx_opt", "theta_r", "epsilon_r", "peak_dtheta_dkx",
                       "peak_dtheta_dx", "qfi", "crb", "shots", "finesse", "n_bounces",
                       "grid_max", "grid_argmax", "grid_distance_cells"});
  csv.integer(ideal.n_atoms).num(ideal.detuning).num(wp.kx_opt).num(wp.theta_r)
      .num(wp.epsilon_r).num(wp.peak_sensitivity).num(report.dtheta_dx).num(report.qfi)
      .num(report.crb).num(shots).num(fin.finesse).num(fin.n_bounces).num(check.grid_max)
      .num(check.grid_argmax).num(check.distance_in_cells).end_row();
  files.push_back(path);
  return {{"degenerate", wp.degenerate}, {"grid_check_passed", check.passed}};
}

json run_disorder(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
                  const std::string& prefix, std::vector<fs::path>& files, int& exit_code) {
  const auto disorder = build_disorder(*cfg.disorder, spec, cfg.master_seed);
  const auto grid = build_grid(cfg.grid, spec);
  const auto result = run_ensemble(spec, disorder, grid, cfg.threads);

  const auto summary_path = dir / (prefix + "_summary.csv");
  {
    CsvWriter csv(summary_path, {"sample", "peak_dtheta_dkx", "peak_kx", "coupling_resamples",
                                 "failed"});
    for (const auto& s : result.samples) {
      csv.integer(static_cast<long long>(s.index)).num(s.peak_sensitivity).num(s.peak_kx)
          .integer(s.coupling_resamples).integer(s.failed ? 1 : 0).end_row();
    }
  }
  files.push_back(summary_path);

  const auto ideal_path = dir / (prefix + "_ideal.csv");
  {
    CsvWriter csv(ideal_path, {"kx", "dtheta_dkx"});
    for (std::size_t j = 0; j < grid.size(); ++j) csv.num(grid[j]).num(result.ideal_curve[j]).end_row();
  }
  files.push_back(ideal_path);

  for (const auto& s : result.samples) {
    if (s.failed) continue;
    const auto path = dir / sample_name(prefix, s.index);
    CsvWriter csv(path, {"kx", "dtheta_dkx"});
    for (std::size_t j = 0; j < grid.size(); ++j) csv.num(grid[j]).num(s.curve[j]).end_row();
    files.push_back(path);
  }

  // Wide table for overlay plots: one column per successful sample.
  const auto overlay_path = dir / (prefix + "_overlay.csv");
  {
    std::ofstream out(overlay_path, std::ios::binary | std::ios::trunc);
    out << "kx,ideal";
    for (const auto& s : result.samples) {
      if (!s.failed) out << ",sample_" << s.index;
    }
    out << '\n';
    for (std::size_t j = 0; j < grid.size(); ++j) {
      out << format_number(grid[j]) << ',' << format_number(result.ideal_curve[j]);
      for (const auto& s : result.samples) {
        if (!s.failed) out << ',' << format_number(s.curve[j]);
      }
      out << '\n';
    }
  }
  files.push_back(overlay_path);

  json failures = json::array();
  for (const auto& s : result.samples) {
    if (s.failed) failures.push_back({{"sample", s.index}, {"error", s.failure}});
  }
  if (!failures.empty()) exit_code = kExitPartialEnsemble;

  return {{"ideal_peak_dtheta_dkx", result.ideal_peak},
          {"ideal_peak_kx", result.ideal_peak_kx},
          {"peak_mean", result.stats.mean},
          {"peak_stddev", result.stats.stddev},
          {"peak_min", result.stats.min},
          {"peak_max", result.stats.max},
          {"peak_relative_spread", result.stats.mean != 0.0 ? result.stats.relative_spread() : 0.0},
          {"resolved_sigma_omega", disorder.sigma_omega},
          {"resolved_sigma_gamma", disorder.sigma_gamma},
          {"resolved_sigma_x", disorder.sigma_x},
          {"failed_samples", failures}};
}

json run_estimate(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
                  const std::string& prefix, std::vector<fs::path>& files) {
  const auto& e = *cfg.estimation;
  BenchmarkConfig bc;
  bc.shots = e.shots;
  bc.repetitions = e.repetitions;
  bc.prior_half_width = e.prior_half_width;
  bc.master_seed = cfg.master_seed;
  bc.threads = cfg.threads;
  bc.reference_phase = e.reference_phase;
  const double reference = e.reference_phase.value_or(quadrature_reference_phase(spec));
  const auto bench = run_estimation_benchmark(spec, bc);

  const auto path = dir / (prefix + ".csv");
  CsvWriter csv(path, {"repetition", "shots", "counts_port_b", "p_hat", "theta_hat", "x_hat",
                       "crb_reference", "failed"});
  for (std::size_t r = 0; r < bench.records.size(); ++r) {
    const auto& rec = bench.records[r];
    csv.integer(static_cast<long long>(r)).integer(rec.shots).integer(rec.counts_port_b)
        .num(rec.p_hat).num(rec.theta_hat).num(rec.x_hat).num(rec.crb_reference)
        .integer(bench.failed[r] ? 1 : 0).end_row();
  }
  files.push_back(path);
  return {{"kx_true", bench.kx_true},
          {"reference_phase", reference},
          {"rmse", bench.rmse},
          {"bias", bench.bias},
          {"crb", bench.crb},
          {"rmse_over_crb", bench.crb > 0 ? bench.rmse / bench.crb : 0.0},
          {"failures", bench.failures}};
}

json run_linear_response(const RunConfig& cfg, const SystemSpec& spec, const fs::path& dir,
                         const std::string& prefix, std::vector<fs::path>& files) {
  const auto report = linear_response_validation(ideal_of(spec), cfg.linear_response_scale);
  const auto path = dir / (prefix + ".csv");
  CsvWriter csv(path, {"channel", "mean_response", "max_linearity_error", "linear",
                       "formula_coefficient_re", "formula_coefficient_im", "ratio_re", "ratio_im"});
  for (const auto& c : report.channels) {
    csv.cell(to_string(c.channel)).num(c.mean_response).num(c.max_linearity_error)
        .integer(c.linear ? 1 : 0).num(c.formula_coefficient.real())
        .num(c.formula_coefficient.imag()).num(c.mean_ratio.real()).num(c.mean_ratio.imag())
        .end_row();
  }
  files.push_back(path);
  return {{"kx", report.kx}, {"scale", report.scale}};
}

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::InvalidArgument ? kExitConfig : kExitNumerical;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  int code, const std::string& path = {}) {
  json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (!path.empty()) j["path"] = path;
  err << j.dump() << '\n';
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const SystemSpec spec = build_system(cfg.system);
  const std::string prefix = cfg.output.prefix.value_or(to_string(cfg.mode));
  fs::create_directories(out_dir);

  RunOutcome outcome;
  json results;
  switch (cfg.mode) {
    case Mode::Sweep: results = run_sweep(cfg, spec, out_dir, prefix, outcome.files); break;
    case Mode::Scaling: results = run_scaling(cfg, spec, out_dir, prefix, outcome.files); break;
    case Mode::WorkingPoint:
      results = run_working_point(cfg, spec, out_dir, prefix, outcome.files);
      break;
    case Mode::Disorder:
      results = run_disorder(cfg, spec, out_dir, prefix, outcome.files, outcome.exit_code);
      break;
    case Mode::Estimate: results = run_estimate(cfg, spec, out_dir, prefix, outcome.files); break;
    case Mode::ValidateLinearResponse:
      results = run_linear_response(cfg, spec, out_dir, prefix, outcome.files);
      break;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json outputs = json::array();
  for (const auto& f : outcome.files) outputs.push_back(f.filename().string());
  outcome.metadata = {{"mode", to_string(cfg.mode)},
                      {"config", to_json(cfg)},
                      {"master_seed", cfg.master_seed},
                      {"version", version()},
                      {"wall_time_s", wall},
                      {"resolved",
                       {{"n_atoms", spec.size()},
                        {"boundary_distance_kx", spec.boundary_distance},
                        {"wavenumber_per_m", spec.scale.wavenumber},
                        {"rate_unit_rad_per_s", spec.scale.rate_unit}}},
                      {"outputs", outputs},
                      {"results", results},
                      {"exit_code", outcome.exit_code}};
  const auto meta_path = out_dir / (prefix + ".meta.json");
  std::ofstream(meta_path, std::ios::binary | std::ios::trunc) << outcome.metadata.dump(2) << '\n';
  outcome.files.push_back(meta_path);
  return outcome;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collectively enhanced atomic mirror: scattering, sensitivity and estimation"};
  app.set_version_flag("--version", std::string(version()));
  bool print_schema = false;
  std::string mode_name, config_path, out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  app.add_flag("--schema", print_schema, "Print the JSON config schema and exit");
  app.add_option("mode", mode_name,
                 "sweep | scaling | working-point | disorder | estimate | validate-linear-response");
  auto* config_opt = app.add_option("--config", config_path, "JSON run configuration");
  auto* out_opt = app.add_option("--out-dir", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  auto* threads_opt =
      app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  if (print_schema) {
    out << config_schema().dump(2) << '\n';
    return kExitOk;
  }
  if (mode_name.empty() || !*config_opt) {
    report_error(err, "usage", "expected: ceam-sim <mode> --config <path>", kExitUsage);
    return kExitUsage;
  }
  const auto mode = parse_mode(mode_name);
  if (!mode) {
    report_error(err, "usage", "unknown mode \"" + mode_name + "\"", kExitUsage);
    return kExitUsage;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (cfg.mode != *mode) {
      throw ConfigError("/mode", std::string("config is for mode \"") + to_string(cfg.mode) +
                                     "\" but \"" + mode_name + "\" was requested");
    }
    if (*seed_opt) cfg.master_seed = seed;
    if (*threads_opt) cfg.threads = threads;

    fs::path dir = ".";
    if (const char* env = std::getenv(kOutDirEnv); env && *env) dir = env;
    if (cfg.output.dir) dir = *cfg.output.dir;
    if (*out_opt) dir = out_dir;

    const auto outcome = run(cfg, dir);
    for (const auto& f : outcome.files) out << f.string() << '\n';
    if (outcome.exit_code == kExitPartialEnsemble) {
      report_error(err, "partial_ensemble", "some disorder samples failed; see sidecar",
                   kExitPartialEnsemble);
    }
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    report_error(err, "config", e.what(), kExitConfig, e.path());
    return kExitConfig;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, to_string(e.kind()), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, "io", e.what(), kExitNumerical);
    return kExitNumerical;
  }
}

}  // namespace ceam::cli
