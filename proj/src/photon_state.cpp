#include "ceam/photon_state.hpp"

#include <cmath>
#include <numbers>

namespace ceam {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

TwoModePhotonState prepare_initial_state() {
  constexpr double amp = std::numbers::sqrt2 / 2.0;
  return {{amp, 0.0}, {0.0, amp}};
}

TwoModePhotonState apply_reflection_phase(const TwoModePhotonState& state, double theta) {
  return {state.signal * std::polar(1.0, theta), state.reference};
}

TwoModePhotonState recombine(const TwoModePhotonState& state) {
  constexpr double h = std::numbers::sqrt2 / 2.0;
  return {h * (state.signal + kI * state.reference), h * (kI * state.signal + state.reference)};
}

PortProbabilities recombine_and_probabilities(const TwoModePhotonState& state) {
  const auto out = recombine(state);
  return {std::norm(out.signal), std::norm(out.reference)};
}

double classical_fisher_information(double theta) {
  const auto in = prepare_initial_state();
  const auto out = recombine(apply_reflection_phase(in, theta));
  // d/dtheta acts only on the signal amplitude; recombination is linear.
  const auto d_out = recombine({kI * std::polar(1.0, theta) * in.signal, {0.0, 0.0}});

  double info = 0.0;
  for (const auto& [amp, d_amp] : {std::pair{out.signal, d_out.signal},
                                   std::pair{out.reference, d_out.reference}}) {
    const double p = std::norm(amp);
    if (p <= 0.0) continue;
    const double dp = 2.0 * std::real(std::conj(amp) * d_amp);
    info += dp * dp / p;
  }
  return info;
}

}  // namespace ceam
