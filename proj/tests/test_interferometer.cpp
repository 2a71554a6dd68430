#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ceam/error.hpp"
#include "ceam/estimator.hpp"
#include "ceam/photon_state.hpp"
#include "ceam/scattering.hpp"
#include "ceam/sensitivity.hpp"

using namespace ceam;

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> I{0.0, 1.0};
}  // namespace

TEST_CASE("initial state") {
  const auto s = prepare_initial_state();
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(s.reference / s.signal - I) < 1e-15);
}

TEST_CASE("reflection phase") {
  const auto s = prepare_initial_state();
  const auto same = apply_reflection_phase(s, 0.0);
  CHECK(same.signal == s.signal);
  CHECK(same.reference == s.reference);
  const auto flipped = apply_reflection_phase(s, kPi);
  CHECK(std::abs(flipped.signal + s.signal) < 1e-15);
  for (int i = 0; i < 100; ++i) {
    CHECK(apply_reflection_phase(s, 0.1 * i).norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("recombination") {
  const auto s = prepare_initial_state();
  auto probs = [&](double theta) { return recombine_and_probabilities(apply_reflection_phase(s, theta)); };
  CHECK(probs(0.0).a == doctest::Approx(0.0));
  CHECK(probs(0.0).b == doctest::Approx(1.0));
  CHECK(probs(0.0).population_difference() == doctest::Approx(1.0));
  CHECK(probs(kPi / 2).a == doctest::Approx(0.5));
  CHECK(probs(kPi / 2).population_difference() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(probs(kPi).a == doctest::Approx(1.0));
  CHECK(probs(kPi).population_difference() == doctest::Approx(-1.0));

  // Output amplitudes reproduce the two-port form exactly.
  const double theta = 0.73;
  const auto out = recombine(apply_reflection_phase(s, theta));
  CHECK(std::abs(out.signal - (std::exp(I * theta) - 1.0) / 2.0) < 1e-15);
  CHECK(std::abs(out.reference - I * (std::exp(I * theta) + 1.0) / 2.0) < 1e-15);

  for (int i = 0; i < 1000; ++i) {
    const double th = -kPi + kTwoPi * i / 999.0;
    const auto p = probs(th);
    CHECK(std::abs(p.a + p.b - 1.0) < 1e-12);
    CHECK(std::abs(p.b - std::cos(th / 2) * std::cos(th / 2)) < 1e-12);
  }
}

TEST_CASE("per-shot classical Fisher information equals one") {
  for (int i = 0; i < 2000; ++i) {
    const double th = -kPi + kTwoPi * i / 1999.0;
    if (std::abs(std::sin(th)) < 1e-3) continue;
    CHECK(std::abs(classical_fisher_information(th) - 1.0) < 1e-9);
  }
}

TEST_CASE("shot sampling") {
  RngStream rng(8);
  CHECK(sample_shots(1.0, 1000, rng) == 1000);
  CHECK(sample_shots(0.0, 1000, rng) == 0);
  RngStream big(21);
  const auto clicks = sample_shots(0.5, 1000000, big);
  CHECK(std::abs(static_cast<double>(clicks) / 1e6 - 0.5) <= 0.002);
  RngStream a(5), b(5);
  CHECK(sample_shots(0.3, 1000, a) == sample_shots(0.3, 1000, b));
  CHECK_THROWS_AS(sample_shots(1.5, 10, rng), Error);
  CHECK_THROWS_AS(sample_shots(0.5, 0, rng), Error);
}

TEST_CASE("noiseless inversion recovers the mirror distance") {
  const IdealArraySpec ideal{10, 1.0, 1.0};
  const double kx_opt = find_working_point(ceam_coeffs(ideal)).kx_opt;
  for (double offset : {0.0, 2e-4, -5e-4}) {
    const double x_true = kx_opt + offset;
    const auto spec = make_ideal_system(ideal, x_true);
    const double reference = quadrature_reference_phase(make_ideal_system(ideal, kx_opt));
    const double p = port_b_probability(spec, reference);
    // Feed exact probability through a huge "shot count" with matching counts.
    const std::int64_t shots = std::int64_t(1) << 52;
    const auto counts = static_cast<std::int64_t>(std::llround(p * double(shots)));
    const auto rec = estimate_x(counts, shots, spec, {kx_opt, 1e-3}, reference);
    CHECK(std::abs(rec.x_hat - x_true) < 1e-12);
    CHECK(rec.crb_reference > 0.0);
  }
}

TEST_CASE("estimator error paths") {
  const IdealArraySpec ideal{10, 1.0, 1.0};
  const double kx_opt = find_working_point(ceam_coeffs(ideal)).kx_opt;
  const auto spec = make_ideal_system(ideal, kx_opt);
  const double reference = quadrature_reference_phase(spec);

  try {
    estimate_x(0, 100, spec, {kx_opt, 1e-3}, reference);
    FAIL("expected saturated-port error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
  try {
    estimate_x(50, 100, spec, {kx_opt, 2.0}, reference);  // wider than one fringe
    FAIL("expected window error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowInversion);
  }
  CHECK_THROWS_AS(estimate_x(101, 100, spec, {kx_opt, 1e-3}, reference), Error);
}

TEST_CASE("Monte-Carlo benchmark is thread-independent") {
  const IdealArraySpec ideal{10, 1.0, 1.0};
  const auto spec = make_ideal_system(ideal, find_working_point(ceam_coeffs(ideal)).kx_opt);
  BenchmarkConfig cfg;
  cfg.shots = 10000;
  cfg.repetitions = 50;
  cfg.master_seed = 17;
  const auto a = run_estimation_benchmark(spec, cfg);
  cfg.threads = 3;
  const auto b = run_estimation_benchmark(spec, cfg);
  CHECK(a.estimates == b.estimates);
  CHECK(a.failures == 0);
  CHECK(a.rmse > 0.0);
  CHECK(a.rmse / a.crb == doctest::Approx(1.0).epsilon(0.35));
}
