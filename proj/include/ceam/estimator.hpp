#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ceam/core_model.hpp"
#include "ceam/random.hpp"

namespace ceam {

/// Outcome of nu single-photon trials and the local inversion of the fringe.
/// Lengths are in kx units (radians of propagation phase).
struct MeasurementRecord {
  std::int64_t shots = 0;
  std::int64_t counts_port_b = 0;
  double p_hat = 0.0;
  double theta_hat = 0.0;  // reflection phase, reference offset removed
  double x_hat = 0.0;
  double crb_reference = 0.0;
};

/// Port-b click probability cos^2((theta + reference_phase)/2) for the spec's
/// current mirror distance.
double port_b_probability(const SystemSpec& spec, double reference_phase);

/// Binomial number of port-b clicks in `shots` trials.
std::int64_t sample_shots(double p_b, std::int64_t shots, RngStream& rng);

struct PriorWindow {
  double center = 0.0;      // kx
  double half_width = 1e-3; // kx
};

/// Inverts the fringe on the prior window. The mirror distance stored in
/// `spec` is ignored; only the atom configuration matters. Throws
/// Degenerate when the port is saturated and WindowInversion when theta is
/// not monotonic on the window or the estimate falls outside it.
MeasurementRecord estimate_x(std::int64_t counts, std::int64_t shots, const SystemSpec& spec,
                             const PriorWindow& prior, double reference_phase);

/// Reference phase that puts the readout at theta + phi = pi/2 (quadrature).
double quadrature_reference_phase(const SystemSpec& spec);

struct EstimationBenchmark {
  std::vector<MeasurementRecord> records;  // one per repetition
  std::vector<bool> failed;                // parallel to records
  std::vector<double> estimates;           // x_hat of successful repetitions
  double kx_true = 0.0;
  double rmse = 0.0;
  double bias = 0.0;
  double crb = 0.0;  // 1 / (sqrt(nu) |theta'(x_true)|)
  std::size_t failures = 0;
};

struct BenchmarkConfig {
  std::int64_t shots = 100000;
  int repetitions = 500;
  double prior_half_width = 1e-3;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  std::optional<double> reference_phase;  // default: quadrature readout
};

/// Monte-Carlo repetitions of the full measurement at the spec's mirror
/// distance, read out in quadrature unless a reference phase is given. Each repetition draws from its own
/// derived stream, so the result is independent of `threads`.
EstimationBenchmark run_estimation_benchmark(const SystemSpec& truth, const BenchmarkConfig& cfg);

}  // namespace ceam
