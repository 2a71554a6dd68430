#include "ceam/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ceam/error.hpp"
#include "ceam/parallel.hpp"
#include "ceam/sensitivity.hpp"

namespace ceam {

namespace {

constexpr cplx kI{0.0, 1.0};

double sensitivity_at(const TransferMatrix& chain, double kx) {
  const auto refl = reflection_from_chain(chain, kx);
  return std::abs(std::imag(reflection_derivative_from_chain(chain, kx) / refl.R));
}

}  // namespace

double sample_truncated_gaussian(double sigma, double truncation_sigmas, RngStream& rng) {
  if (sigma < 0.0) throw Error(ErrorKind::InvalidArgument, "sigma must be non-negative");
  if (!(truncation_sigmas > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
  }
  if (sigma == 0.0) return 0.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  double v = normal(rng);
  while (std::abs(v) > truncation_sigmas) v = normal(rng);
  return sigma * v;
}

RngStream disorder_stream(std::uint64_t master_seed, std::size_t sample_index,
                          std::size_t atom_index, DisorderTag tag) {
  return make_stream(master_seed, {sample_index, atom_index, static_cast<std::uint64_t>(tag)});
}

PerturbedSystem perturb(const SystemSpec& ideal, const DisorderSpec& d,
                        std::size_t sample_index) {
  if (d.sigma_omega < 0.0 || d.sigma_gamma < 0.0 || d.sigma_x < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "disorder widths must be non-negative");
  }
  PerturbedSystem out{ideal, 0};
  const double mirror = ideal.mirror_position();
  for (std::size_t i = 0; i < out.spec.atoms.size(); ++i) {
    auto& atom = out.spec.atoms[i];
    auto freq = disorder_stream(d.master_seed, sample_index, i, DisorderTag::Frequency);
    atom.transition_frequency += sample_truncated_gaussian(d.sigma_omega, d.truncation, freq);

    auto coup = disorder_stream(d.master_seed, sample_index, i, DisorderTag::Coupling);
    double gamma = atom.guided_decay + sample_truncated_gaussian(d.sigma_gamma, d.truncation, coup);
    while (!(gamma > 0.0)) {
      ++out.coupling_resamples;
      gamma = atom.guided_decay + sample_truncated_gaussian(d.sigma_gamma, d.truncation, coup);
    }
    atom.guided_decay = gamma;

    auto pos = disorder_stream(d.master_seed, sample_index, i, DisorderTag::Position);
    atom.position += sample_truncated_gaussian(d.sigma_x, d.truncation, pos);
  }
  if (!out.spec.atoms.empty()) {
    out.spec.boundary_distance = mirror - out.spec.atoms.back().position;
  }
  return out;
}

cplx linear_response_dR(const IdealArraySpec& ideal, const DisorderDeltas& deltas,
                        double wavenumber) {
  const double delta = ideal.detuning;
  if (delta == 0.0) {
    throw Error(ErrorKind::Degenerate, "linear response formula is singular at zero detuning");
  }
  const auto n = static_cast<std::size_t>(ideal.n_atoms);
  if (deltas.d_omega.size() != n || deltas.d_gamma.size() != n ||
      deltas.d_x.size() != (n > 0 ? n - 1 : 0)) {
    throw Error(ErrorKind::InvalidArgument,
                "expected N frequency, N coupling and N-1 position deltas");
  }
  const double g = ideal.gamma;
  const cplx r = ceam_coeffs(ideal).r;
  const cplx c_omega = 2.0 * kI * g / (delta * delta);
  const cplx c_gamma = 2.0 * kI / delta;
  const cplx c_x = ideal.n_atoms * g * g * wavenumber * r / (delta * delta);

  cplx dR{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) dR += c_omega * deltas.d_omega[i] + c_gamma * deltas.d_gamma[i];
  for (double dx : deltas.d_x) dR += c_x * dx;
  return dR;
}

const char* to_string(ResponseChannel channel) {
  switch (channel) {
    case ResponseChannel::Frequency: return "frequency";
    case ResponseChannel::Coupling: return "coupling";
    case ResponseChannel::PositionAbsolute: return "position_absolute";
    case ResponseChannel::PositionGap: return "position_gap";
  }
  return "unknown";
}

ChannelReport probe_channel(const IdealArraySpec& ideal, ResponseChannel channel,
                            double scale) {
  if (ideal.detuning == 0.0) {
    throw Error(ErrorKind::Degenerate, "linear response validation needs nonzero detuning");
  }
  const auto wp = find_working_point(ceam_coeffs(ideal));
  const SystemSpec base = make_ideal_system(ideal, wp.kx_opt);
  const cplx R0 = total_reflection_transfer_matrix(base).R;
  const std::size_t n = base.size();

  // Unit deltas for the formula: a single nonzero entry of size 1.
  DisorderDeltas unit{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                      std::vector<double>(n > 0 ? n - 1 : 0, 0.0)};
  std::size_t basis = 0;
  switch (channel) {
    case ResponseChannel::Frequency:
      unit.d_omega[0] = 1.0;
      basis = n;
      break;
    case ResponseChannel::Coupling:
      unit.d_gamma[0] = 1.0;
      basis = n;
      break;
    case ResponseChannel::PositionAbsolute:
    case ResponseChannel::PositionGap:
      if (n > 1) unit.d_x[0] = 1.0;
      basis = n > 0 ? n - 1 : 0;
      break;
  }

  ChannelReport rep;
  rep.channel = channel;
  rep.formula_coefficient = basis > 0 ? linear_response_dR(ideal, unit) : cplx{};

  auto shifted = [&](std::size_t i, double s) {
    SystemSpec spec = base;
    switch (channel) {
      case ResponseChannel::Frequency:
        spec.atoms[i].transition_frequency += s;
        break;
      case ResponseChannel::Coupling:
        spec.atoms[i].guided_decay += s;
        break;
      case ResponseChannel::PositionAbsolute:
        spec.atoms[i].position += s;
        break;
      case ResponseChannel::PositionGap:
        for (std::size_t j = i + 1; j < n; ++j) spec.atoms[j].position += s;
        spec.boundary_distance -= s;
        break;
    }
    return total_reflection_transfer_matrix(spec).R - R0;
  };

  double response_sum = 0.0;
  cplx ratio_sum{0.0, 0.0};
  for (std::size_t i = 0; i < basis; ++i) {
    const cplx full = shifted(i, scale);
    const cplx half = shifted(i, scale / 2.0);
    response_sum += std::abs(full) / scale;
    if (std::abs(half) > 0.0) {
      const double err = std::abs(std::abs(full) / (2.0 * std::abs(half)) - 1.0);
      rep.max_linearity_error = std::max(rep.max_linearity_error, err);
    } else {
      rep.max_linearity_error = std::max(rep.max_linearity_error, std::abs(full) > 0.0 ? 1.0 : 0.0);
    }
    if (std::abs(rep.formula_coefficient) > 0.0) {
      ratio_sum += full / (scale * rep.formula_coefficient);
    }
  }
  if (basis > 0) {
    rep.mean_response = response_sum / static_cast<double>(basis);
    rep.mean_ratio = ratio_sum / static_cast<double>(basis);
    rep.linear = rep.max_linearity_error < 0.01;
  }
  return rep;
}

LinearResponseReport linear_response_validation(const IdealArraySpec& ideal, double scale) {
  LinearResponseReport report;
  report.ideal = ideal;
  report.scale = scale;
  report.kx = find_working_point(ceam_coeffs(ideal)).kx_opt;
  for (auto ch : {ResponseChannel::Frequency, ResponseChannel::Coupling,
                  ResponseChannel::PositionAbsolute, ResponseChannel::PositionGap}) {
    report.channels.push_back(probe_channel(ideal, ch, scale));
  }
  return report;
}

std::size_t EnsembleResult::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const auto& s) { return s.failed; }));
}

Peak refine_peak(const TransferMatrix& chain, std::span<const double> kx_grid,
                 std::span<const double> curve, double offset) {
  if (kx_grid.empty() || kx_grid.size() != curve.size()) {
    throw Error(ErrorKind::InvalidArgument, "curve and grid sizes differ");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (std::abs(curve[i]) > std::abs(curve[best])) best = i;
  }
  Peak peak{std::abs(curve[best]), kx_grid[best]};
  if (kx_grid.size() < 2) return peak;

  double lo = kx_grid[best > 0 ? best - 1 : 0];
  double hi = kx_grid[std::min(best + 1, kx_grid.size() - 1)];
  constexpr double inv_phi = 0.6180339887498949;
  auto f = [&](double kx) { return sensitivity_at(chain, kx + offset); };
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (fa > fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm > peak.value) peak = {fm, mid};
  return peak;
}

PeakStatistics summarize_peaks(std::span<const double> peaks) {
  PeakStatistics s;
  s.count = peaks.size();
  if (peaks.empty()) return s;
  // Offsets from the first value keep identical inputs exactly identical.
  const double ref = peaks.front();
  double sum = 0.0;
  s.min = s.max = ref;
  for (double p : peaks) {
    sum += p - ref;
    s.min = std::min(s.min, p);
    s.max = std::max(s.max, p);
  }
  const double n = static_cast<double>(peaks.size());
  const double mean_offset = sum / n;
  s.mean = ref + mean_offset;
  if (peaks.size() > 1) {
    double ss = 0.0;
    for (double p : peaks) {
      const double dev = (p - ref) - mean_offset;
      ss += dev * dev;
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

std::vector<double> working_point_grid(const SystemSpec& spec, int points) {
  if (spec.atoms.empty()) {
    throw Error(ErrorKind::InvalidArgument, "working point grid needs at least one atom");
  }
  const IdealArraySpec ideal{static_cast<int>(spec.size()), spec.atoms[0].guided_decay,
                             spec.detuning(0)};
  const double center = find_working_point(ceam_coeffs(ideal)).kx_opt;
  const double half = std::numbers::pi / 2.0;
  return uniform_grid(center - half, center + half, points);
}

EnsembleResult run_ensemble(const SystemSpec& ideal, const DisorderSpec& disorder,
                            std::span<const double> kx_grid, unsigned threads) {
  if (kx_grid.size() < 2) throw Error(ErrorKind::InvalidArgument, "grid needs >= 2 points");
  if (disorder.n_samples < 1) throw Error(ErrorKind::InvalidArgument, "n_samples must be >= 1");
  if (!(disorder.truncation > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "truncation must be positive");
  }

  EnsembleResult result;
  result.kx_grid.assign(kx_grid.begin(), kx_grid.end());

  auto evaluate = [&](const SystemSpec& spec, double offset, std::vector<double>& curve) {
    const auto chain = system_transfer_matrix(spec);
    curve.resize(kx_grid.size());
    for (std::size_t j = 0; j < kx_grid.size(); ++j) {
      const double kx = kx_grid[j] + offset;
      const auto refl = reflection_from_chain(chain, kx);
      curve[j] = std::imag(reflection_derivative_from_chain(chain, kx) / refl.R);
    }
    return refine_peak(chain, kx_grid, curve, offset);
  };

  const auto ideal_peak = evaluate(ideal, 0.0, result.ideal_curve);
  result.ideal_peak = ideal_peak.value;
  result.ideal_peak_kx = ideal_peak.kx;

  result.samples.resize(static_cast<std::size_t>(disorder.n_samples));
  parallel_for(result.samples.size(), threads, [&](std::size_t s) {
    auto& sample = result.samples[s];
    sample.index = s;
    try {
      auto perturbed = perturb(ideal, disorder, s);
      sample.coupling_resamples = perturbed.coupling_resamples;
      // Grid values are ideal mirror distances; the mirror does not move.
      const double offset = perturbed.spec.boundary_distance - ideal.boundary_distance;
      const auto peak = evaluate(perturbed.spec, offset, sample.curve);
      sample.peak_sensitivity = peak.value;
      sample.peak_kx = peak.kx;
    } catch (const std::exception& e) {
      sample.failed = true;
      sample.failure = e.what();
      sample.curve.clear();
    }
  });

  std::vector<double> peaks;
  for (const auto& s : result.samples) {
    if (!s.failed) peaks.push_back(s.peak_sensitivity);
  }
  result.stats = summarize_peaks(peaks);
  return result;
}

}  // namespace ceam
