#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace ceam {

// Internal units: rates are measured in units of the reference single-atom
// guided decay rate gamma, lengths as the propagation phase k*L in radians.
// SI quantities only enter through SIConfig.

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct AtomSpec {
  double transition_frequency = 0.0;  // omega0_i
  double guided_decay = 1.0;          // gamma_i
  double nonguided_decay = 0.0;       // gamma'_i
  double position = 0.0;              // k * x_i

  double purcell_factor() const { return guided_decay / nonguided_decay; }
};

/// Conversion factors back to SI. A default-constructed scale means the spec
/// was built directly in internal units.
struct UnitScale {
  double rate_unit = 1.0;   // rad/s per internal rate unit
  double wavenumber = 1.0;  // k in 1/m
};

struct SystemSpec {
  std::vector<AtomSpec> atoms;
  double boundary_distance = 0.0;  // k * x, last atom to mirror
  double probe_frequency = 1.0;    // omega
  UnitScale scale;

  std::size_t size() const { return atoms.size(); }
  double detuning(std::size_t i) const {
    return atoms[i].transition_frequency - probe_frequency;
  }
  double group_velocity() const {
    return probe_frequency * scale.rate_unit / scale.wavenumber;
  }
  /// Absolute mirror coordinate; equals the last atom position plus x.
  double mirror_position() const {
    return (atoms.empty() ? 0.0 : atoms.back().position) + boundary_distance;
  }
  /// Effective cavity length X = x + (N-1)d, measured from the first atom.
  double cavity_length() const {
    return mirror_position() - (atoms.empty() ? 0.0 : atoms.front().position);
  }
};

struct IdealArraySpec {
  int n_atoms = 1;
  double gamma = 1.0;
  double detuning = 0.0;

  double collective_decay() const { return n_atoms * gamma; }
};

/// Default probe frequency, in units of gamma, for specs built directly in
/// internal units (6 GHz transmons with gamma/2pi = 100 MHz).
inline constexpr double kDefaultProbeFrequency = 60.0;

/// Homogeneous lossless lattice: first atom at the origin, neighbours a full
/// wavelength apart (kd = 2 pi).
SystemSpec make_ideal_system(const IdealArraySpec& ideal, double boundary_distance,
                             double nonguided_decay = 0.0, double spacing = kTwoPi,
                             double probe_frequency = kDefaultProbeFrequency);

/// Copy of `spec` with the mirror moved so that it sits `boundary_distance`
/// past the last atom.
SystemSpec with_boundary_distance(SystemSpec spec, double boundary_distance);

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationResult validate(const SystemSpec& spec);

/// Homogeneous array described in SI units. Frequencies are ordinary
/// frequencies (Hz), rates are given as rate/2pi (Hz).
struct SIConfig {
  int n_atoms = 1;
  double transition_frequency_hz = 6e9;
  double gamma_over_2pi_hz = 100e6;
  double gamma_prime_over_2pi_hz = 0.0;
  double detuning_over_2pi_hz = 0.0;  // (omega0 - omega)/2pi
  double wavelength_m = 0.05;         // probe wavelength, sets k = 2pi/lambda
  double spacing_m = 0.05;
  double boundary_distance_m = 0.0125;
};

SystemSpec to_internal_units(const SIConfig& si);

/// Inverse of to_internal_units for homogeneous, uniformly spaced specs.
SIConfig to_si(const SystemSpec& spec);

}  // namespace ceam
