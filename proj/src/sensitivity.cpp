#include "ceam/sensitivity.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ceam/error.hpp"
#include "ceam/parallel.hpp"
#include "ceam/photon_state.hpp"

namespace ceam {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double wrap_to_period(double value, double period) {
  double w = std::fmod(value, period);
  if (w < 0.0) w += period;
  if (w >= period) w -= period;
  return w;
}

}  // namespace

double phase_derivative_analytic(const ScatterCoeffs& ceam, double kx) {
  const auto refl = total_reflection_closed_form(ceam, kx);
  if (refl.pole_limit || std::abs(ceam.t) < kNumericalFloor) return 0.0;
  const cplx z = std::polar(1.0, 2.0 * kx);
  const cplx denom = 1.0 + z * ceam.r;
  const cplx dR = -2.0 * kI * z * ceam.t * ceam.t / (denom * denom);
  return std::imag(dR / refl.R);
}

double phase_derivative_transfer_matrix(const SystemSpec& spec) {
  const auto chain = system_transfer_matrix(spec);
  const auto refl = reflection_from_chain(chain, spec.boundary_distance);
  return std::imag(reflection_derivative_from_chain(chain, spec.boundary_distance) / refl.R);
}

NumericDerivative phase_derivative_numeric(const SystemSpec& spec, double step) {
  if (!(step >= 1e-9 && step <= 1e-3)) {
    throw Error(ErrorKind::InvalidArgument, "finite-difference step must lie in [1e-9, 1e-3]");
  }
  const auto chain = system_transfer_matrix(spec);
  const double x = spec.boundary_distance;
  // arg(R+/R-) is the unwrapped phase difference as long as it stays below pi.
  auto central = [&](double h) {
    const cplx plus = reflection_from_chain(chain, x + h).R;
    const cplx minus = reflection_from_chain(chain, x - h).R;
    return std::arg(plus / minus) / (2.0 * h);
  };
  const double d1 = central(step);
  const double d2 = central(2.0 * step);
  const double scale = std::max({std::abs(d1), std::abs(d2), 1e-300});
  if (std::abs(d1 - d2) > 1e-3 * scale) {
    throw Error(ErrorKind::NonSmooth, "finite-difference estimates disagree; non-smooth point");
  }
  return {(4.0 * d1 - d2) / 3.0, std::abs(d1 - d2) / 3.0};
}

WorkingPoint find_working_point(const ScatterCoeffs& ceam) {
  const double mag = std::abs(ceam.r);
  if (!(mag > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "working point needs |r| > 0");
  }
  WorkingPoint wp;
  wp.theta_r = std::arg(ceam.r);
  wp.epsilon_r = 1.0 - mag;
  wp.kx_opt = wrap_to_period((kPi - wp.theta_r) / 2.0, kPi);
  wp.degenerate = std::abs(ceam.t) < kNumericalFloor;
  wp.peak_sensitivity =
      wp.degenerate ? 0.0 : std::abs(phase_derivative_analytic(ceam, wp.kx_opt));
  return wp;
}

WorkingPointCheck verify_working_point(const ScatterCoeffs& ceam, const WorkingPoint& wp,
                                       int grid_points) {
  if (grid_points < 2) throw Error(ErrorKind::InvalidArgument, "grid needs >= 2 points");
  WorkingPointCheck check;
  check.cell = kPi / grid_points;
  for (int i = 0; i < grid_points; ++i) {
    const double kx = i * check.cell;
    const double s = std::abs(phase_derivative_analytic(ceam, kx));
    if (s > check.grid_max) {
      check.grid_max = s;
      check.grid_argmax = kx;
    }
  }
  double dist = std::abs(check.grid_argmax - wp.kx_opt);
  dist = std::min(dist, kPi - dist);
  check.distance_in_cells = dist / check.cell;
  const double peak = wp.peak_sensitivity;
  check.passed = check.grid_max <= peak * (1.0 + 1e-9) && check.distance_in_cells <= 1.0;
  return check;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

ScalingResult scaling_sweep(std::span<const int> n_list, double detuning, double gamma) {
  if (detuning == 0.0) {
    throw Error(ErrorKind::Degenerate, "scaling sweep at zero detuning has no sensitivity");
  }
  ScalingResult result;
  std::vector<double> ns, peaks, ns_large, peaks_large;
  for (int n : n_list) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "atom counts must be >= 1");
    const auto wp = find_working_point(ceam_coeffs({n, gamma, detuning}));
    result.points.push_back({n, wp.peak_sensitivity, wp.kx_opt});
    ns.push_back(n);
    peaks.push_back(wp.peak_sensitivity);
    if (n >= 8) {
      ns_large.push_back(n);
      peaks_large.push_back(wp.peak_sensitivity);
    }
  }
  result.slope = log_log_slope(ns, peaks);
  result.slope_large_n = log_log_slope(ns_large, peaks_large);
  return result;
}

double qfi_from_derivative(double theta_prime) { return theta_prime * theta_prime; }

double qfi_state_vector(const std::function<cplx(double)>& reflection_of_kx, double kx,
                        double step) {
  const auto initial = prepare_initial_state();
  auto state = [&](double at) -> std::array<cplx, 2> {
    const cplx R = reflection_of_kx(at);
    const auto s = apply_reflection_phase(initial, std::arg(R));
    return {s.signal, s.reference};
  };
  auto central = [&](double h) -> std::array<cplx, 2> {
    const auto p = state(kx + h);
    const auto m = state(kx - h);
    return {(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h)};
  };
  // Keep the step well inside the local phase scale 1/|theta'|.
  const double slope =
      std::abs(std::arg(reflection_of_kx(kx + step) / reflection_of_kx(kx - step))) / (2.0 * step);
  const double h = slope > 0.0 ? std::min(step, 1e-3 / slope) : step;
  const auto d1 = central(h);
  const auto d2 = central(2.0 * h);
  const std::array<cplx, 2> d{(4.0 * d1[0] - d2[0]) / 3.0, (4.0 * d1[1] - d2[1]) / 3.0};
  const auto psi = state(kx);
  const double dd = std::norm(d[0]) + std::norm(d[1]);
  const cplx overlap = std::conj(psi[0]) * d[0] + std::conj(psi[1]) * d[1];
  return 4.0 * (dd - std::norm(overlap));
}

double cramer_rao_bound(double qfi, double shots) {
  if (!(shots >= 1.0)) throw Error(ErrorKind::InvalidArgument, "shot count must be >= 1");
  if (!(qfi > 0.0)) throw Error(ErrorKind::Degenerate, "uninformative point: zero Fisher information");
  return 1.0 / std::sqrt(shots * qfi);
}

FinesseReport finesse_report(double r_ceam_magnitude, double r_mirror_magnitude) {
  auto in_range = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_range(r_ceam_magnitude) || !in_range(r_mirror_magnitude)) {
    throw Error(ErrorKind::InvalidArgument, "reflection magnitudes must lie in (0, 1]");
  }
  FinesseReport rep;
  rep.composite_r = std::sqrt(r_ceam_magnitude * r_mirror_magnitude);
  const double deficit = 1.0 - rep.composite_r * rep.composite_r;
  if (deficit <= 0.0) {
    rep.divergent = true;
    rep.finesse = std::numeric_limits<double>::infinity();
    rep.n_bounces = rep.finesse;
    return rep;
  }
  rep.finesse = kPi * rep.composite_r / deficit;
  rep.n_bounces = rep.finesse / kPi;
  return rep;
}

SensitivityReport sensitivity_report(const IdealArraySpec& ideal, double kx, double shots,
                                     double wavenumber) {
  const auto ceam = ceam_coeffs(ideal);
  SensitivityReport rep;
  rep.kx = kx;
  rep.theta = total_reflection_closed_form(ceam, kx).theta;
  rep.dtheta_dkx = phase_derivative_analytic(ceam, kx);
  rep.dtheta_dx = rep.dtheta_dkx * wavenumber;
  rep.qfi = qfi_from_derivative(rep.dtheta_dx);
  rep.crb = rep.qfi > 0.0 ? cramer_rao_bound(rep.qfi, shots)
                          : std::numeric_limits<double>::infinity();
  const auto wp = find_working_point(ceam);
  double dist = std::abs(wrap_to_period(kx, kPi) - wp.kx_opt);
  rep.at_optimum = std::min(dist, kPi - dist) < 1e-9;
  return rep;
}

SensitivityReport sensitivity_report(const SystemSpec& spec, double shots) {
  SensitivityReport rep;
  rep.kx = spec.boundary_distance;
  rep.theta = total_reflection_transfer_matrix(spec).theta;
  rep.dtheta_dkx = phase_derivative_transfer_matrix(spec);
  rep.dtheta_dx = rep.dtheta_dkx * spec.scale.wavenumber;
  rep.qfi = qfi_from_derivative(rep.dtheta_dx);
  rep.crb = rep.qfi > 0.0 ? cramer_rao_bound(rep.qfi, shots)
                          : std::numeric_limits<double>::infinity();
  return rep;
}

std::vector<SweepPoint> phase_sweep(const SystemSpec& spec, std::span<const double> kx_grid,
                                    unsigned threads) {
  const auto chain = system_transfer_matrix(spec);
  std::vector<SweepPoint> out(kx_grid.size());
  std::vector<double> raw(kx_grid.size());
  parallel_for(kx_grid.size(), threads, [&](std::size_t i) {
    const double kx = kx_grid[i];
    const auto refl = reflection_from_chain(chain, kx);
    const cplx dR = reflection_derivative_from_chain(chain, kx);
    out[i] = {kx, 0.0, std::imag(dR / refl.R), refl.magnitude};
    raw[i] = refl.theta;
  });
  const auto unwrapped = unwrap_phase(raw);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].theta_unwrapped = unwrapped[i];
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "grid needs >= 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + i * step;
  grid.back() = hi;
  return grid;
}

}  // namespace ceam
