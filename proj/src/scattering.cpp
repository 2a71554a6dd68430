#include "ceam/scattering.hpp"

#include <cmath>
#include <numbers>

#include "ceam/error.hpp"

namespace ceam {

namespace {

constexpr cplx kI{0.0, 1.0};

ReflectionResult make_result(cplx R) {
  return {R, std::arg(R), std::abs(R), false};
}

}  // namespace

ScatterCoeffs single_atom_coeffs(double detuning, double gamma, double gamma_prime) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "guided decay must be positive");
  }
  if (gamma_prime < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "nonguided decay must be non-negative");
  }
  const cplx r = -(gamma / 2.0) / (kI * detuning + (gamma + gamma_prime) / 2.0);
  return {r, 1.0 + r};
}

ScatterCoeffs ceam_coeffs(const IdealArraySpec& spec) {
  if (spec.n_atoms < 1) {
    throw Error(ErrorKind::InvalidArgument, "CEAM needs at least one atom");
  }
  const double half_width = spec.collective_decay() / 2.0;
  const cplx denom = kI * spec.detuning + half_width;
  return {-half_width / denom, kI * spec.detuning / denom};
}

ReflectionResult total_reflection_closed_form(const ScatterCoeffs& ceam, double kx) {
  const cplx z = std::polar(1.0, 2.0 * kx);
  const cplx denom = 1.0 + ceam.r * z;
  if (std::abs(denom) < kNumericalFloor) {
    if (std::abs(ceam.t) < kNumericalFloor) {
      // Perfect mirror in front of a perfect mirror.
      ReflectionResult res = make_result(cplx{-1.0, 0.0});
      res.pole_limit = true;
      return res;
    }
    throw Error(ErrorKind::Pole, "pole of the closed-form reflection coefficient");
  }
  return make_result(ceam.r - ceam.t * ceam.t * z / denom);
}

TransferMatrix atom_transfer_matrix(const ScatterCoeffs& c) {
  if (std::abs(c.t) < kNumericalFloor) {
    throw Error(ErrorKind::OpaqueElement,
                "opaque element (t = 0): resonant lossless atom has no transfer matrix");
  }
  const cplx inv_t = 1.0 / c.t;
  return {(c.t * c.t - c.r * c.r) * inv_t, c.r * inv_t, -c.r * inv_t, inv_t};
}

TransferMatrix emitter_transfer_matrix(double detuning, double gamma, double gamma_prime) {
  single_atom_coeffs(detuning, gamma, gamma_prime);  // argument checks
  const cplx resonance = kI * detuning + gamma_prime / 2.0;
  if (std::abs(resonance) < kNumericalFloor * gamma) {
    throw Error(ErrorKind::OpaqueElement,
                "opaque element (t = 0): resonant lossless atom has no transfer matrix");
  }
  // t - r = 1 for a point emitter, so with q = r/t the matrix is
  // [[1+q, q], [-q, 1-q]]. A lossless q is purely imaginary and the entries
  // stay exact complex conjugates of each other.
  const cplx q = -(gamma / 2.0) / resonance;
  return {1.0 + q, q, -q, 1.0 - q};
}

TransferMatrix propagation_matrix(double k_length) {
  return {std::polar(1.0, k_length), 0.0, 0.0, std::polar(1.0, -k_length)};
}

ScatterCoeffs coeffs_from_transfer_matrix(const TransferMatrix& m) {
  if (std::abs(m.m22) < kNumericalFloor) {
    throw Error(ErrorKind::InvalidArgument, "singular transfer matrix");
  }
  return {-m.m21 / m.m22, 1.0 / m.m22};
}

TransferMatrix system_transfer_matrix(const SystemSpec& spec) {
  TransferMatrix chain = TransferMatrix::identity();
  double previous = 0.0;
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    const auto& a = spec.atoms[i];
    chain = emitter_transfer_matrix(spec.detuning(i), a.guided_decay, a.nonguided_decay) *
            propagation_matrix(a.position - previous) * chain;
    previous = a.position;
  }
  return chain;
}

namespace {

cplx closure_denominator(const TransferMatrix& chain, cplx z) {
  const cplx denom = chain.m22 + z * chain.m12;
  const double scale = std::abs(chain.m22) + std::abs(chain.m12);
  if (std::abs(denom) < kNumericalFloor * scale) {
    throw Error(ErrorKind::Pole, "pole of the mirror closure");
  }
  return denom;
}

}  // namespace

ReflectionResult reflection_from_chain(const TransferMatrix& chain, double kx) {
  const cplx z = std::polar(1.0, 2.0 * kx);
  return make_result(-(chain.m21 + z * chain.m11) / closure_denominator(chain, z));
}

cplx reflection_derivative_from_chain(const TransferMatrix& chain, double kx) {
  const cplx z = std::polar(1.0, 2.0 * kx);
  const cplx denom = closure_denominator(chain, z);
  return -2.0 * kI * z * chain.det() / (denom * denom);
}

ReflectionResult total_reflection_transfer_matrix(const SystemSpec& spec) {
  return reflection_from_chain(system_transfer_matrix(spec), spec.boundary_distance);
}

std::vector<double> unwrap_phase(std::span<const double> raw) {
  std::vector<double> out(raw.begin(), raw.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const double jump = raw[i] - raw[i - 1];
    if (jump > std::numbers::pi) {
      offset -= kTwoPi;
    } else if (jump < -std::numbers::pi) {
      offset += kTwoPi;
    }
    out[i] = raw[i] + offset;
  }
  return out;
}

}  // namespace ceam
