#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// transfer-matrix or closed-form code paths it is meant to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Dense complex solve by Gaussian elimination with partial pivoting.
inline std::vector<cplx> solve(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

struct Emitter {
  double detuning;     // omega0 - omega, units of gamma
  double gamma;
  double gamma_prime;
  double position;     // k z
};

/// Coupled-dipole (Green's function) solution for point emitters in front of a
/// perfect mirror at k z_m. Field is E(z) = E_in(z) + sum_j beta_j E_j g(z, z_j)
/// with the mirror Green's function g = e^{ik|z-z'|} - e^{ik(2 z_m - z - z')}
/// and single-emitter polarisability beta = -(gamma/2) / (i Delta + gamma'/2).
/// Returns the amplitude of the reflected wave e^{-ikz} referenced at z = 0.
inline cplx reflection_coupled_dipole(const std::vector<Emitter>& atoms, double mirror) {
  const cplx I{0.0, 1.0};
  const std::size_t n = atoms.size();
  auto green = [&](double z, double zp) {
    return std::exp(I * std::abs(z - zp)) - std::exp(I * (2.0 * mirror - z - zp));
  };
  auto incident = [&](double z) { return std::exp(I * z) - std::exp(I * (2.0 * mirror - z)); };
  std::vector<cplx> beta(n);
  for (std::size_t j = 0; j < n; ++j) {
    beta[j] = -(atoms[j].gamma / 2.0) / (I * atoms[j].detuning + atoms[j].gamma_prime / 2.0);
  }
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  std::vector<cplx> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = incident(atoms[i].position);
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = (i == j ? 1.0 : 0.0) - beta[j] * green(atoms[i].position, atoms[j].position);
    }
  }
  const auto field = n ? solve(a, rhs) : std::vector<cplx>{};
  cplx R = -std::exp(I * 2.0 * mirror);
  for (std::size_t j = 0; j < n; ++j) {
    const double z = atoms[j].position;
    R += beta[j] * field[j] * (std::exp(I * z) - std::exp(I * (2.0 * mirror - z)));
  }
  return R;
}

/// Same model without the mirror: (r, t) for a wave incident from the left.
inline std::pair<cplx, cplx> coeffs_coupled_dipole(const std::vector<Emitter>& atoms) {
  const cplx I{0.0, 1.0};
  const std::size_t n = atoms.size();
  std::vector<cplx> beta(n);
  for (std::size_t j = 0; j < n; ++j) {
    beta[j] = -(atoms[j].gamma / 2.0) / (I * atoms[j].detuning + atoms[j].gamma_prime / 2.0);
  }
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
  std::vector<cplx> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = std::exp(I * atoms[i].position);
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = (i == j ? 1.0 : 0.0) -
                beta[j] * std::exp(I * std::abs(atoms[i].position - atoms[j].position));
    }
  }
  const auto field = solve(a, rhs);
  cplx r{0.0, 0.0}, t{1.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    r += beta[j] * field[j] * std::exp(I * atoms[j].position);
    t += beta[j] * field[j] * std::exp(-I * atoms[j].position);
  }
  return {r, t};
}

/// Variance of the standard normal truncated to [-c, c].
inline double truncated_normal_variance(double c) {
  const double pdf = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  const double mass = std::erf(c / std::numbers::sqrt2);
  return 1.0 - 2.0 * c * pdf / mass;
}

/// Phase of R by brute-force central difference at a single step (no
/// extrapolation), for sanity checks at loose tolerance.
template <class F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
