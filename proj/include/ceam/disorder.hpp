#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ceam/core_model.hpp"
#include "ceam/random.hpp"
#include "ceam/scattering.hpp"

namespace ceam {

/// Independent per-atom static disorder. Widths are standard deviations in
/// internal units (rates in gamma, positions in radians of kx); every draw is
/// a Gaussian truncated to +-truncation*sigma.
struct DisorderSpec {
  double sigma_omega = 0.0;
  double sigma_gamma = 0.0;
  double sigma_x = 0.0;
  double truncation = 3.0;
  int n_samples = 20;
  std::uint64_t master_seed = 0;
};

enum class DisorderTag : std::uint64_t { Frequency = 1, Coupling = 2, Position = 3 };

/// Rejection sampler for N(0, sigma^2) conditioned on |v| <= truncation*sigma.
/// sigma == 0 returns 0 without touching the stream.
double sample_truncated_gaussian(double sigma, double truncation_sigmas, RngStream& rng);

RngStream disorder_stream(std::uint64_t master_seed, std::size_t sample_index,
                          std::size_t atom_index, DisorderTag tag);

struct PerturbedSystem {
  SystemSpec spec;
  int coupling_resamples = 0;  // redraws forced by gamma_i <= 0
};

/// Adds independent draws to omega0_i, gamma_i and x_i. The mirror stays at its
/// ideal coordinate, so boundary_distance absorbs the last atom's shift.
PerturbedSystem perturb(const SystemSpec& ideal, const DisorderSpec& disorder,
                        std::size_t sample_index);

struct DisorderDeltas {
  std::vector<double> d_omega;  // per atom
  std::vector<double> d_gamma;  // per atom
  std::vector<double> d_x;      // per gap, N - 1 entries
};

/// First-order disorder response of R at the working point:
///   dR = sum_i [2i gamma/Delta^2 d omega_i + 2i/Delta d gamma_i]
///      + sum_{i<N} N gamma^2 k r / Delta^2 dx_i,
/// with r the CEAM reflection coefficient.
cplx linear_response_dR(const IdealArraySpec& ideal, const DisorderDeltas& deltas,
                        double wavenumber = 1.0);

enum class ResponseChannel { Frequency, Coupling, PositionAbsolute, PositionGap };

const char* to_string(ResponseChannel channel);

struct ChannelReport {
  ResponseChannel channel = ResponseChannel::Frequency;
  double mean_response = 0.0;          // mean |dR_numeric| / scale over the basis
  double max_linearity_error = 0.0;    // max | |dR(s)| / (2 |dR(s/2)|) - 1 |
  bool linear = false;                 // max_linearity_error < 1%
  cplx formula_coefficient;            // dR_formula per unit displacement
  cplx mean_ratio;                     // mean dR_numeric / (scale * coefficient)
};

struct LinearResponseReport {
  IdealArraySpec ideal;
  double kx = 0.0;
  double scale = 0.0;
  std::vector<ChannelReport> channels;
};

/// Compares transfer-matrix finite differences with linear_response_dR at the
/// ideal working point. Each channel is probed by single-atom (or single-gap)
/// perturbations of size `scale`.
///   PositionAbsolute: atom i < N-1 moves, last atom and mirror fixed.
///   PositionGap: gap i grows, atoms downstream shift, mirror fixed.
LinearResponseReport linear_response_validation(const IdealArraySpec& ideal,
                                                double scale = 1e-6);

ChannelReport probe_channel(const IdealArraySpec& ideal, ResponseChannel channel,
                            double scale = 1e-6);

struct EnsembleSample {
  std::size_t index = 0;
  std::vector<double> curve;  // d theta / d(kx) on the grid
  double peak_sensitivity = 0.0;
  double peak_kx = 0.0;
  int coupling_resamples = 0;
  bool failed = false;
  std::string failure;
};

struct PeakStatistics {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  double relative_spread() const { return stddev / mean; }
};

struct EnsembleResult {
  std::vector<double> kx_grid;
  std::vector<double> ideal_curve;
  double ideal_peak = 0.0;
  double ideal_peak_kx = 0.0;
  std::vector<EnsembleSample> samples;
  PeakStatistics stats;

  std::size_t failed_count() const;
};

/// Peak of |d theta/d(kx)| for the given spec: grid argmax refined by a
/// golden-section search over the neighbouring cells. The grid is in terms of
/// the ideal mirror distance; `offset` is added before evaluation.
struct Peak {
  double value = 0.0;
  double kx = 0.0;
};
Peak refine_peak(const TransferMatrix& chain, std::span<const double> kx_grid,
                 std::span<const double> curve, double offset);

PeakStatistics summarize_peaks(std::span<const double> peaks);

/// Grid of `points` values spanning one period (pi) of kx centred on the
/// lossless working point of the spec's first atom parameters.
std::vector<double> working_point_grid(const SystemSpec& spec, int points = 2001);

EnsembleResult run_ensemble(const SystemSpec& ideal, const DisorderSpec& disorder,
                            std::span<const double> kx_grid, unsigned threads = 1);

}  // namespace ceam
