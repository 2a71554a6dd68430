#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ceam/error.hpp"
#include "ceam/scattering.hpp"
#include "oracle.hpp"

using namespace ceam;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

std::vector<oracle::Emitter> emitters_of(const SystemSpec& spec) {
  std::vector<oracle::Emitter> out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& a = spec.atoms[i];
    out.push_back({spec.detuning(i), a.guided_decay, a.nonguided_decay, a.position});
  }
  return out;
}

}  // namespace

TEST_CASE("single atom coefficients") {
  SUBCASE("resonant lossless atom is a perfect mirror") {
    const auto c = single_atom_coeffs(0.0, 1.0, 0.0);
    CHECK(std::abs(c.r - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(c.t) < 1e-15);
  }
  SUBCASE("Delta = gamma/2") {
    const auto c = single_atom_coeffs(0.5, 1.0, 0.0);
    CHECK(std::abs(c.r - (-(1.0 - I) / 2.0)) < 1e-15);
    CHECK(std::abs(c.t - (1.0 + I) / 2.0) < 1e-15);
  }
  SUBCASE("lossy resonant atom") {
    const auto c = single_atom_coeffs(0.0, 1.0, 1.0);
    CHECK(std::abs(c.r - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(c.t - cplx(0.5, 0.0)) < 1e-15);
    const double kept = std::norm(c.r) + std::norm(c.t);
    CHECK(kept == doctest::Approx(0.5));
    CHECK(kept < 1.0);
  }
  CHECK_THROWS_AS(single_atom_coeffs(0.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(single_atom_coeffs(0.0, -1.0, 0.0), Error);
}

TEST_CASE("t = 1 + r and energy accounting over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> det(-5.0, 5.0), g(0.1, 3.0), gp(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double gamma = g(rng);
    const double gamma_prime = i % 2 ? gp(rng) : 0.0;
    const auto c = single_atom_coeffs(det(rng), gamma, gamma_prime);
    CHECK(std::abs(c.t - (1.0 + c.r)) < 1e-15);
    const double kept = std::norm(c.r) + std::norm(c.t);
    if (gamma_prime == 0.0) {
      CHECK(std::abs(kept - 1.0) < 1e-14);
    } else {
      CHECK(kept < 1.0);
    }
    const auto ce = ceam_coeffs({1 + i % 40, gamma, det(rng)});
    CHECK(std::abs(ce.t - (1.0 + ce.r)) < 1e-15);
  }
}

TEST_CASE("CEAM coefficients") {
  const auto c = ceam_coeffs({10, 1.0, 1.0});
  CHECK(std::abs(c.r) == doctest::Approx(5.0 / std::sqrt(26.0)).epsilon(1e-14));
  for (int n : {1, 3, 17, 200}) {
    const auto res = ceam_coeffs({n, 1.0, 0.0});
    CHECK(std::abs(res.r - cplx(-1.0, 0.0)) < 1e-15);
  }
  // Deficit approaches 2 Delta^2 / (N gamma)^2.
  for (int n : {100, 400, 1600}) {
    const auto res = ceam_coeffs({n, 1.0, 1.0});
    const double deficit = 1.0 - std::abs(res.r);
    CHECK(deficit / (2.0 / (double(n) * n)) == doctest::Approx(1.0).epsilon(5.0 / (double(n) * n) + 1e-9));
  }
  CHECK_THROWS_AS(ceam_coeffs({0, 1.0, 1.0}), Error);
}

TEST_CASE("closed-form total reflection") {
  SUBCASE("resonant CEAM reflects -1 for any kx") {
    const ScatterCoeffs c{cplx(-1.0, 0.0), cplx(0.0, 0.0)};
    for (double kx : {0.1, 1.0, 2.5}) {
      CHECK(std::abs(total_reflection_closed_form(c, kx).R + 1.0) < 1e-15);
    }
    const auto pole = total_reflection_closed_form(c, 0.0);
    CHECK(pole.pole_limit);
    CHECK(pole.R == cplx(-1.0, 0.0));
  }
  SUBCASE("no atoms: bare mirror") {
    const ScatterCoeffs c{cplx(0.0, 0.0), cplx(1.0, 0.0)};
    for (double kx : {0.0, 0.4, 2.0, 5.0}) {
      const auto res = total_reflection_closed_form(c, kx);
      CHECK(std::abs(res.R + std::exp(2.0 * I * kx)) < 1e-15);
    }
  }
  SUBCASE("unphysical pole is rejected") {
    const ScatterCoeffs c{cplx(-1.0, 0.0), cplx(0.5, 0.0)};
    CHECK_THROWS_AS(total_reflection_closed_form(c, 0.0), Error);
  }
}

TEST_CASE("transfer matrices") {
  SUBCASE("transparent element is the identity") {
    const auto m = atom_transfer_matrix({cplx(0.0), cplx(1.0)});
    CHECK(std::abs(m.m11 - 1.0) + std::abs(m.m12) + std::abs(m.m21) + std::abs(m.m22 - 1.0) < 1e-15);
  }
  SUBCASE("propagation") {
    auto is_identity = [](const TransferMatrix& m, double tol) {
      return std::abs(m.m11 - 1.0) + std::abs(m.m12) + std::abs(m.m21) + std::abs(m.m22 - 1.0) < tol;
    };
    CHECK(is_identity(propagation_matrix(0.0), 1e-15));
    CHECK(is_identity(propagation_matrix(kTwoPi), 1e-15));
    const auto q = propagation_matrix(kPi / 2.0);
    CHECK(std::abs(q.m11 - I) < 1e-15);
    CHECK(std::abs(q.m22 + I) < 1e-15);
  }
  SUBCASE("round trip of coefficients") {
    for (double det : {-2.0, 0.3, 1.0, 4.0}) {
      const auto c = single_atom_coeffs(det, 1.0, 0.2);
      const auto back = coeffs_from_transfer_matrix(atom_transfer_matrix(c));
      CHECK(std::abs(back.r - c.r) < 1e-15);
      CHECK(std::abs(back.t - c.t) < 1e-15);
      CHECK(std::abs(atom_transfer_matrix(c).det() - 1.0) < 1e-14);
    }
  }
  SUBCASE("opaque element is rejected") {
    CHECK_THROWS_AS(atom_transfer_matrix(single_atom_coeffs(0.0, 1.0, 0.0)), Error);
  }
  SUBCASE("two atoms a wavelength apart compose to the N=2 CEAM") {
    for (double det : {0.1, 0.5, 1.0, 3.0}) {
      const auto c = single_atom_coeffs(det, 1.0, 0.0);
      const auto m = atom_transfer_matrix(c) * propagation_matrix(kTwoPi) * atom_transfer_matrix(c);
      const auto two = coeffs_from_transfer_matrix(m);
      const auto expected = ceam_coeffs({2, 1.0, det});
      CHECK(std::abs(two.r - expected.r) < 1e-13);
      CHECK(std::abs(two.t - expected.t) < 1e-13);
    }
  }
  SUBCASE("composition is associative") {
    const auto a = atom_transfer_matrix(single_atom_coeffs(0.7, 1.0, 0.1));
    const auto b = propagation_matrix(1.3);
    const auto c = atom_transfer_matrix(single_atom_coeffs(-0.4, 0.6, 0.0));
    const auto l = (a * b) * c;
    const auto r = a * (b * c);
    CHECK(std::abs(l.m11 - r.m11) + std::abs(l.m12 - r.m12) + std::abs(l.m21 - r.m21) +
              std::abs(l.m22 - r.m22) < 1e-14);
  }
}

TEST_CASE("transfer-matrix reflection agrees with the closed form") {
  SUBCASE("N = 1") {
    for (double kx : {0.05, 0.7, 1.9, 3.0}) {
      const auto spec = make_ideal_system({1, 1.0, 0.8}, kx);
      const auto tm = total_reflection_transfer_matrix(spec).R;
      const auto cf = total_reflection_closed_form(ceam_coeffs({1, 1.0, 0.8}), kx).R;
      CHECK(std::abs(tm - cf) < 1e-12);
    }
  }
  SUBCASE("N = 10 random sweep") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> det(0.1, 5.0), kx(0.0, kTwoPi);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double d = det(rng);
      const double x = kx(rng);
      const auto tm = total_reflection_transfer_matrix(make_ideal_system({10, 1.0, d}, x)).R;
      const auto cf = total_reflection_closed_form(ceam_coeffs({10, 1.0, d}), x).R;
      worst = std::max(worst, std::abs(tm - cf));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("coupled-dipole oracle agrees with the transfer-matrix chain") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> det(-3.0, 3.0), g(0.5, 1.5), gp(0.0, 0.05),
      jitter(-0.3, 0.3), kx(0.1, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 8;
    SystemSpec spec = make_ideal_system({n, 1.0, 0.0}, kx(rng));
    for (auto& a : spec.atoms) {
      a.transition_frequency = spec.probe_frequency + det(rng);
      a.guided_decay = g(rng);
      a.nonguided_decay = gp(rng);
      a.position += jitter(rng);
    }
    const auto R_tm = total_reflection_transfer_matrix(spec).R;
    const auto R_or = oracle::reflection_coupled_dipole(emitters_of(spec), spec.mirror_position());
    CHECK(std::abs(R_tm - R_or) < 1e-10);
  }
  // Without mirror, single-atom coefficients match the oracle too.
  const auto [r, t] = oracle::coeffs_coupled_dipole({{0.6, 1.0, 0.3, 0.0}});
  const auto c = single_atom_coeffs(0.6, 1.0, 0.3);
  CHECK(std::abs(r - c.r) < 1e-14);
  CHECK(std::abs(t - c.t) < 1e-14);
}

TEST_CASE("unitarity and loss") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> det(0.1, 5.0), kx(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 64;
    const auto lossless = make_ideal_system({n, 1.0, det(rng)}, kx(rng));
    CHECK(std::abs(total_reflection_transfer_matrix(lossless).magnitude - 1.0) < 1e-12);
    auto lossy = lossless;
    lossy.atoms[static_cast<std::size_t>(i) % lossy.size()].nonguided_decay = 0.005;
    CHECK(total_reflection_transfer_matrix(lossy).magnitude < 1.0);
  }
  const auto lossy10 = make_ideal_system({10, 1.0, 1.0}, 0.1, 0.005);
  CHECK(total_reflection_transfer_matrix(lossy10).magnitude < 1.0);
}

TEST_CASE("stroboscopic lattice collapses to a single super-atom") {
  for (int n : {2, 5, 16, 64}) {
    for (double det : {0.3, 1.0, 2.5}) {
      const auto chain = system_transfer_matrix(make_ideal_system({n, 1.0, det}, 1.0));
      const auto eff = coeffs_from_transfer_matrix(chain);
      const auto single = single_atom_coeffs(det, n * 1.0, 0.0);
      CHECK(std::abs(eff.r - single.r) < 1e-11);
      CHECK(std::abs(eff.t - single.t) < 1e-11);
    }
  }
}

TEST_CASE("analytic reflection derivative matches finite differences") {
  auto spec = make_ideal_system({6, 1.0, 0.7}, 0.4, 0.01);
  spec.atoms[2].position += 0.05;
  const auto chain = system_transfer_matrix(spec);
  const double h = 1e-6;
  const cplx fd = (reflection_from_chain(chain, 0.4 + h).R - reflection_from_chain(chain, 0.4 - h).R) / (2 * h);
  const cplx an = reflection_derivative_from_chain(chain, 0.4);
  CHECK(std::abs(fd - an) < 1e-6 * std::abs(an));
}

TEST_CASE("phase unwrapping") {
  std::vector<double> raw;
  for (int i = 0; i < 400; ++i) {
    const double theta = 0.05 * i;
    raw.push_back(std::arg(std::polar(1.0, theta)));
  }
  const auto un = unwrap_phase(raw);
  for (std::size_t i = 0; i < un.size(); ++i) CHECK(un[i] == doctest::Approx(0.05 * i).epsilon(1e-12));
  for (std::size_t i = 1; i < un.size(); ++i) CHECK(std::abs(un[i] - un[i - 1]) < kPi);
}

TEST_CASE("emitter transfer matrix") {
  for (double d : {-3.0, -0.2, 0.05, 1.0, 4.0}) {
    for (double loss : {0.0, 0.01, 0.7}) {
      const auto direct = emitter_transfer_matrix(d, 1.3, loss);
      const auto via = atom_transfer_matrix(single_atom_coeffs(d, 1.3, loss));
      CHECK(std::abs(direct.m11 - via.m11) < 1e-12);
      CHECK(std::abs(direct.m12 - via.m12) < 1e-12);
      CHECK(std::abs(direct.m21 - via.m21) < 1e-12);
      CHECK(std::abs(direct.m22 - via.m22) < 1e-12);
      CHECK(std::abs(direct.det() - 1.0) < 1e-13);
      if (loss == 0.0) {
        CHECK(direct.m22 == std::conj(direct.m11));
        CHECK(direct.m21 == std::conj(direct.m12));
      }
    }
  }
  CHECK_THROWS_AS(emitter_transfer_matrix(0.0, 1.0, 0.0), Error);
}
