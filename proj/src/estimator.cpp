#include "ceam/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ceam/error.hpp"
#include "ceam/parallel.hpp"
#include "ceam/photon_state.hpp"
#include "ceam/scattering.hpp"
#include "ceam/sensitivity.hpp"

namespace ceam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kWindowSamples = 129;
constexpr std::uint64_t kShotStreamTag = 0x5107;

}  // namespace

double port_b_probability(const SystemSpec& spec, double reference_phase) {
  const double theta = total_reflection_transfer_matrix(spec).theta;
  const auto state = apply_reflection_phase(prepare_initial_state(), theta + reference_phase);
  return recombine_and_probabilities(state).b;
}

std::int64_t sample_shots(double p_b, std::int64_t shots, RngStream& rng) {
  if (!(p_b >= 0.0 && p_b <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "click probability must lie in [0, 1]");
  }
  if (shots < 1) throw Error(ErrorKind::InvalidArgument, "shot count must be >= 1");
  std::binomial_distribution<std::int64_t> clicks(shots, p_b);
  return clicks(rng);
}

MeasurementRecord estimate_x(std::int64_t counts, std::int64_t shots, const SystemSpec& spec,
                             const PriorWindow& prior, double reference_phase) {
  if (shots < 1 || counts < 0 || counts > shots) {
    throw Error(ErrorKind::InvalidArgument, "counts must lie in [0, shots] with shots >= 1");
  }
  if (!(prior.half_width > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "prior window must have positive width");
  }
  MeasurementRecord rec;
  rec.shots = shots;
  rec.counts_port_b = counts;
  rec.p_hat = static_cast<double>(counts) / static_cast<double>(shots);
  if (counts == 0 || counts == shots) {
    throw Error(ErrorKind::Degenerate, "saturated output port: phase at a stationary point of cos");
  }

  const auto chain = system_transfer_matrix(spec);
  auto reflection = [&](double kx) { return reflection_from_chain(chain, kx).R; };

  // Measured phase phi(kx) = theta(kx) + reference, tracked continuously
  // across the window.
  const double lo = prior.center - prior.half_width;
  const double hi = prior.center + prior.half_width;
  const auto grid = uniform_grid(lo, hi, kWindowSamples);
  std::vector<double> phi(grid.size());
  phi[0] = std::arg(reflection(grid[0])) + reference_phase;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = std::arg(reflection(grid[i]) / reflection(grid[i - 1]));
    if (std::abs(step) > kPi / 2.0) {
      throw Error(ErrorKind::WindowInversion, "prior window too wide to resolve the phase");
    }
    phi[i] = phi[i - 1] + step;
  }
  const double slope_sign = phi.back() > phi.front() ? 1.0 : -1.0;
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (!((phi[i] - phi[i - 1]) * slope_sign > 0.0)) {
      throw Error(ErrorKind::WindowInversion, "phase is not monotonic on the prior window");
    }
  }
  const double phi_min = std::min(phi.front(), phi.back());
  const double phi_max = std::max(phi.front(), phi.back());

  // Branches of arccos consistent with the window.
  const double base = std::acos(2.0 * rec.p_hat - 1.0);
  std::vector<double> candidates;
  for (double sign : {1.0, -1.0}) {
    const double c = sign * base;
    const double m_lo = std::ceil((phi_min - c) / (2.0 * kPi));
    const double m_hi = std::floor((phi_max - c) / (2.0 * kPi));
    for (double m = m_lo; m <= m_hi; m += 1.0) candidates.push_back(c + 2.0 * kPi * m);
  }
  if (candidates.empty()) {
    throw Error(ErrorKind::WindowInversion, "estimated phase lies outside the prior window");
  }
  if (candidates.size() > 1) {
    throw Error(ErrorKind::WindowInversion, "prior window spans more than half a fringe");
  }
  const double target = candidates.front();

  std::size_t j = 0;
  while (j + 2 < grid.size() && (phi[j + 1] - target) * slope_sign < 0.0) ++j;
  double a = grid[j];
  double b = grid[j + 1];
  const double phi_a = phi[j];
  const cplx R_a = reflection(a);
  auto phase_at = [&](double kx) { return phi_a + std::arg(reflection(kx) / R_a); };
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    const double mid = 0.5 * (a + b);
    if ((phase_at(mid) - target) * slope_sign < 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  rec.x_hat = 0.5 * (a + b);
  rec.theta_hat = target - reference_phase;

  const double slope =
      std::abs(phase_derivative_transfer_matrix(with_boundary_distance(spec, rec.x_hat)));
  rec.crb_reference = slope > 0.0 ? 1.0 / (std::sqrt(static_cast<double>(shots)) * slope)
                                  : std::numeric_limits<double>::infinity();
  return rec;
}

double quadrature_reference_phase(const SystemSpec& spec) {
  return kPi / 2.0 - total_reflection_transfer_matrix(spec).theta;
}

EstimationBenchmark run_estimation_benchmark(const SystemSpec& truth, const BenchmarkConfig& cfg) {
  if (cfg.repetitions < 1) throw Error(ErrorKind::InvalidArgument, "repetitions must be >= 1");
  EstimationBenchmark out;
  out.kx_true = truth.boundary_distance;
  const double reference = cfg.reference_phase.value_or(quadrature_reference_phase(truth));
  const double p_b = port_b_probability(truth, reference);
  const double slope = std::abs(phase_derivative_transfer_matrix(truth));
  out.crb = cramer_rao_bound(qfi_from_derivative(slope), static_cast<double>(cfg.shots));

  const auto reps = static_cast<std::size_t>(cfg.repetitions);
  std::vector<MeasurementRecord> records(reps);
  std::vector<char> ok(reps, 0);
  const PriorWindow prior{truth.boundary_distance, cfg.prior_half_width};
  parallel_for(reps, cfg.threads, [&](std::size_t r) {
    auto rng = make_stream(cfg.master_seed, {kShotStreamTag, r});
    const auto counts = sample_shots(p_b, cfg.shots, rng);
    try {
      records[r] = estimate_x(counts, cfg.shots, truth, prior, reference);
      ok[r] = 1;
    } catch (const Error&) {
      records[r].shots = cfg.shots;
      records[r].counts_port_b = counts;
      records[r].p_hat = static_cast<double>(counts) / static_cast<double>(cfg.shots);
    }
  });

  double sum_sq = 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    out.failed.push_back(!ok[r]);
    if (!ok[r]) {
      ++out.failures;
      continue;
    }
    const double err = records[r].x_hat - out.kx_true;
    out.estimates.push_back(records[r].x_hat);
    sum += err;
    sum_sq += err * err;
  }
  const double n = static_cast<double>(out.estimates.size());
  if (n > 0) {
    out.rmse = std::sqrt(sum_sq / n);
    out.bias = sum / n;
  }
  out.records = std::move(records);
  return out;
}

}  // namespace ceam
