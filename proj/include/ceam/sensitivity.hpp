#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ceam/core_model.hpp"
#include "ceam/scattering.hpp"

namespace ceam {

// All phase derivatives below are d theta / d(kx), i.e. per radian of
// propagation phase. Multiply by k to get d theta / dx in inverse length.

/// Im(R'/R) with R' = -2i z t^2 / (1 + z r)^2, closed-form CEAM.
double phase_derivative_analytic(const ScatterCoeffs& ceam, double kx);

/// Same quantity for an arbitrary (disordered, lossy) spec, from the chain.
double phase_derivative_transfer_matrix(const SystemSpec& spec);

struct NumericDerivative {
  double value = 0.0;
  double error_estimate = 0.0;
};

inline constexpr double kDefaultFiniteDifferenceStep = 1e-6;

/// Richardson-combined central differences of the unwrapped reflection phase
/// at steps h and 2h. Throws NonSmooth when the two estimates disagree by
/// more than 1e-3 relative.
NumericDerivative phase_derivative_numeric(const SystemSpec& spec,
                                           double step = kDefaultFiniteDifferenceStep);

struct WorkingPoint {
  double kx_opt = 0.0;         // in [0, pi); the optimum repeats with period pi
  double epsilon_r = 0.0;      // 1 - |r|
  double theta_r = 0.0;        // arg r
  double peak_sensitivity = 0.0;
  bool degenerate = false;     // t = 0: R is constant, no sensitivity anywhere
};

/// Mirror distance with z r = -|r|.
WorkingPoint find_working_point(const ScatterCoeffs& ceam);

struct WorkingPointCheck {
  double grid_max = 0.0;
  double grid_argmax = 0.0;
  double cell = 0.0;
  double distance_in_cells = 0.0;
  bool passed = false;
};

/// Grid search of |d theta / d(kx)| over one period [0, pi).
WorkingPointCheck verify_working_point(const ScatterCoeffs& ceam, const WorkingPoint& wp,
                                       int grid_points = 10000);

struct ScalingPoint {
  int n_atoms = 0;
  double peak_sensitivity = 0.0;
  double kx_opt = 0.0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  double slope = 0.0;          // least-squares slope of log(peak) vs log(N)
  double slope_large_n = 0.0;  // same fit restricted to N >= 8, NaN if < 2 points
};

ScalingResult scaling_sweep(std::span<const int> n_list, double detuning, double gamma);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// F = (d theta/dx)^2 for the pure two-mode state.
double qfi_from_derivative(double theta_prime);

/// F = 4 [<d psi|d psi> - |<psi|d psi>|^2] with d psi from Richardson central
/// differences of the phase-shifted two-mode state. `step` is an upper bound;
/// it shrinks to 1e-3 / |theta'| on narrow resonances.
double qfi_state_vector(const std::function<cplx(double)>& reflection_of_kx, double kx,
                        double step = 1e-4);

/// delta x >= 1 / sqrt(shots * F).
double cramer_rao_bound(double qfi, double shots);

struct FinesseReport {
  double finesse = 0.0;
  double n_bounces = 0.0;
  double composite_r = 0.0;
  bool divergent = false;  // composite |r| = 1
};

FinesseReport finesse_report(double r_ceam_magnitude, double r_mirror_magnitude);

struct SensitivityReport {
  double kx = 0.0;
  double theta = 0.0;
  double dtheta_dkx = 0.0;
  double dtheta_dx = 0.0;  // dtheta_dkx * k
  double qfi = 0.0;        // per length^2
  double crb = 0.0;        // length, for the given shot count
  bool at_optimum = false;
};

SensitivityReport sensitivity_report(const IdealArraySpec& ideal, double kx, double shots,
                                     double wavenumber = 1.0);
SensitivityReport sensitivity_report(const SystemSpec& spec, double shots);

struct SweepPoint {
  double kx = 0.0;
  double theta_unwrapped = 0.0;
  double dtheta_dkx = 0.0;
  double abs_R = 0.0;
};

/// Moves the mirror across `kx_grid` (distance from the last atom) and records
/// the unwrapped phase and its derivative. Grid points are evaluated in
/// parallel; the result is ordered by grid index.
std::vector<SweepPoint> phase_sweep(const SystemSpec& spec, std::span<const double> kx_grid,
                                    unsigned threads = 1);

std::vector<double> uniform_grid(double lo, double hi, int points);

}  // namespace ceam
