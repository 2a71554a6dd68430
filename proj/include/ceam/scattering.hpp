#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ceam/core_model.hpp"

namespace ceam {

using cplx = std::complex<double>;

/// Below this modulus a denominator or transmission amplitude is treated as zero.
inline constexpr double kNumericalFloor = 1e-14;

struct ScatterCoeffs {
  cplx r;
  cplx t;
};

/// Maps (right-mover, left-mover) amplitudes on the left of an element to the
/// amplitudes on its right. Fields evolve as e^{-i omega t}.
struct TransferMatrix {
  cplx m11{1.0, 0.0};
  cplx m12{0.0, 0.0};
  cplx m21{0.0, 0.0};
  cplx m22{1.0, 0.0};

  static TransferMatrix identity() { return {}; }
  cplx det() const { return m11 * m22 - m12 * m21; }

  friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
};

struct ReflectionResult {
  cplx R;
  double theta = 0.0;      // principal value of arg R, in (-pi, pi]
  double magnitude = 0.0;  // |R|
  bool pole_limit = false; // r = -1 with z = 1; R reported as the -1 limit
};

/// r = -(gamma/2) / (i Delta + (gamma + gamma')/2), t = 1 + r.
ScatterCoeffs single_atom_coeffs(double detuning, double gamma, double gamma_prime);

/// Collective coefficients of N atoms a wavelength apart, Gamma = N gamma.
ScatterCoeffs ceam_coeffs(const IdealArraySpec& spec);

/// Reflection of CEAM plus mirror, R = r - t^2 z / (1 + r z) with z = e^{2ikx}.
ReflectionResult total_reflection_closed_form(const ScatterCoeffs& ceam, double kx);

TransferMatrix atom_transfer_matrix(const ScatterCoeffs& coeffs);
/// Same matrix as atom_transfer_matrix(single_atom_coeffs(...)), built
/// directly from the emitter parameters.
TransferMatrix emitter_transfer_matrix(double detuning, double gamma, double gamma_prime);
TransferMatrix propagation_matrix(double k_length);

/// Coefficients for a wave incident from the left on the element described by m.
ScatterCoeffs coeffs_from_transfer_matrix(const TransferMatrix& m);

/// Chain from the reference plane at the origin to just past the last atom.
TransferMatrix system_transfer_matrix(const SystemSpec& spec);

/// Mirror closure b_in = -e^{2ikx} b_out applied to a precomputed chain.
ReflectionResult reflection_from_chain(const TransferMatrix& chain, double kx);

/// dR/d(kx) for a precomputed chain: -2i z det(M) / (m22 + z m12)^2.
cplx reflection_derivative_from_chain(const TransferMatrix& chain, double kx);

ReflectionResult total_reflection_transfer_matrix(const SystemSpec& spec);

/// Removes 2 pi jumps between neighbouring samples.
std::vector<double> unwrap_phase(std::span<const double> raw);

}  // namespace ceam
