#pragma once

#include <complex>

namespace ceam {

/// Single photon shared between the signal arm (which reflects off the
/// atom-mirror system) and the reference arm, in the |1_s,0_r>, |0_s,1_r> basis.
struct TwoModePhotonState {
  std::complex<double> signal;
  std::complex<double> reference;

  double norm() const { return std::norm(signal) + std::norm(reference); }
};

struct PortProbabilities {
  double a = 0.0;
  double b = 0.0;

  /// <Sigma_z> = p_b - p_a.
  double population_difference() const { return b - a; }
};

/// (|1_s,0_r> + i |0_s,1_r>) / sqrt(2).
TwoModePhotonState prepare_initial_state();

/// Multiplies the signal amplitude by e^{i theta}.
TwoModePhotonState apply_reflection_phase(const TwoModePhotonState& state, double theta);

/// Output-mode amplitudes (a, b) of the balanced recombination
///   a = (s + i r) / sqrt(2),   b = (i s + r) / sqrt(2),
/// which sends the phase-shifted state to
///   ((e^{i theta} - 1)|1_a,0_b> + i(e^{i theta} + 1)|0_a,1_b>) / 2.
TwoModePhotonState recombine(const TwoModePhotonState& state);

PortProbabilities recombine_and_probabilities(const TwoModePhotonState& state);

/// Per-shot Fisher information of the two-port click record with respect to
/// theta, sum_j (dp_j/dtheta)^2 / p_j, evaluated for the phase-shifted
/// initial state. Derivatives are taken on the output amplitudes.
double classical_fisher_information(double theta);

}  // namespace ceam
