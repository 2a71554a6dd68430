#include "ceam/core_model.hpp"

#include <cmath>

#include "ceam/error.hpp"

namespace ceam {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::OpaqueElement: return "opaque_element";
    case ErrorKind::NonSmooth: return "non_smooth";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::WindowInversion: return "window_inversion";
  }
  return "unknown";
}

SystemSpec make_ideal_system(const IdealArraySpec& ideal, double boundary_distance,
                             double nonguided_decay, double spacing,
                             double probe_frequency) {
  if (ideal.n_atoms < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative atom count");
  }
  SystemSpec spec;
  spec.probe_frequency = probe_frequency;
  spec.boundary_distance = boundary_distance;
  spec.atoms.reserve(static_cast<std::size_t>(ideal.n_atoms));
  for (int i = 0; i < ideal.n_atoms; ++i) {
    spec.atoms.push_back({probe_frequency + ideal.detuning, ideal.gamma,
                          nonguided_decay, i * spacing});
  }
  return spec;
}

SystemSpec with_boundary_distance(SystemSpec spec, double boundary_distance) {
  spec.boundary_distance = boundary_distance;
  return spec;
}

ValidationResult validate(const SystemSpec& spec) {
  ValidationResult result;
  auto& v = result.violations;
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    const auto& a = spec.atoms[i];
    const std::string at = " (atom " + std::to_string(i) + ")";
    if (!std::isfinite(a.guided_decay) || !std::isfinite(a.nonguided_decay) ||
        !std::isfinite(a.transition_frequency) || !std::isfinite(a.position)) {
      v.push_back("non-finite atom parameter" + at);
      continue;
    }
    if (a.guided_decay < 0.0) {
      v.push_back("negative guided decay" + at);
    } else if (a.guided_decay == 0.0) {
      v.push_back("zero guided decay" + at);
    }
    if (a.nonguided_decay < 0.0) v.push_back("negative nonguided decay" + at);
    if (i > 0 && !(a.position > spec.atoms[i - 1].position)) {
      v.push_back("non-monotonic positions" + at);
    }
  }
  if (!(spec.boundary_distance > 0.0)) v.push_back("non-positive boundary distance");
  if (!(spec.probe_frequency > 0.0)) v.push_back("non-positive probe frequency");
  if (!(spec.scale.wavenumber > 0.0)) v.push_back("non-positive wavenumber");
  if (!(spec.scale.rate_unit > 0.0)) v.push_back("non-positive rate unit");
  return result;
}

SystemSpec to_internal_units(const SIConfig& si) {
  if (!(si.transition_frequency_hz > 0.0) || !(si.gamma_over_2pi_hz > 0.0) ||
      !(si.wavelength_m > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "SI frequencies, decay rate and wavelength must be positive");
  }
  if (si.gamma_prime_over_2pi_hz < 0.0 || si.spacing_m < 0.0 || si.n_atoms < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative SI parameter");
  }
  const double rate_unit = kTwoPi * si.gamma_over_2pi_hz;
  const double k = kTwoPi / si.wavelength_m;
  const double omega0 = kTwoPi * si.transition_frequency_hz / rate_unit;
  const double detuning = si.detuning_over_2pi_hz / si.gamma_over_2pi_hz;
  const double probe = omega0 - detuning;
  if (!(probe > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "probe frequency must be positive");
  }

  SystemSpec spec;
  spec.scale = {rate_unit, k};
  spec.probe_frequency = probe;
  spec.boundary_distance = k * si.boundary_distance_m;
  const double gamma_prime = si.gamma_prime_over_2pi_hz / si.gamma_over_2pi_hz;
  for (int i = 0; i < si.n_atoms; ++i) {
    spec.atoms.push_back({omega0, 1.0, gamma_prime, k * si.spacing_m * i});
  }
  return spec;
}

SIConfig to_si(const SystemSpec& spec) {
  const double unit_hz = spec.scale.rate_unit / kTwoPi;
  const double k = spec.scale.wavenumber;
  SIConfig si;
  si.n_atoms = static_cast<int>(spec.atoms.size());
  si.wavelength_m = kTwoPi / k;
  si.boundary_distance_m = spec.boundary_distance / k;
  if (spec.atoms.empty()) {
    si.transition_frequency_hz = spec.probe_frequency * unit_hz;
    si.gamma_over_2pi_hz = unit_hz;
    si.detuning_over_2pi_hz = 0.0;
    si.spacing_m = 0.0;
    return si;
  }
  const auto& a = spec.atoms.front();
  si.transition_frequency_hz = a.transition_frequency * unit_hz;
  si.gamma_over_2pi_hz = a.guided_decay * unit_hz;
  si.gamma_prime_over_2pi_hz = a.nonguided_decay * unit_hz;
  si.detuning_over_2pi_hz = spec.detuning(0) * unit_hz;
  si.spacing_m = spec.atoms.size() > 1
                     ? (spec.atoms[1].position - spec.atoms[0].position) / k
                     : 0.0;
  return si;
}

}  // namespace ceam
