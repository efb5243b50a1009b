#include <doctest.h>

#include <cmath>
#include <random>

#include "qtopo/qsim.hpp"

using namespace qtopo;

namespace {

bool close(Amplitude a, Amplitude b, double tol) { return std::abs(a - b) < tol; }

StateVector basis1(std::int64_t k, std::int64_t level) {
  const std::int64_t l[] = {level};
  return StateVector::basis(k, l);
}

}  // namespace

TEST_CASE("qft_mod_k examples") {
  const double r3 = 1.0 / std::sqrt(3.0);
  const StateVector zero = qft_mod_k(basis1(3, 0), 0);
  for (std::size_t s = 0; s < 3; ++s) CHECK(close(zero[s], {r3, 0.0}, 1e-15));

  const StateVector one = qft_mod_k(basis1(3, 1), 0);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(close(one[s], r3 * std::polar(1.0, -2.0 * kPi * static_cast<double>(s) / 3.0), 1e-15));
  }
}

TEST_CASE("qft followed by its inverse is the identity") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (std::int64_t k : {3, 5, 7, 13}) {
    std::vector<Amplitude> amps(static_cast<std::size_t>(k * k));
    double norm = 0.0;
    for (auto& a : amps) {
      a = {g(rng), g(rng)};
      norm += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(norm);
    const StateVector in = StateVector::from_amplitudes(k, 2, amps);
    for (int reg : {0, 1}) {
      StateVector s = qft_mod_k(in, reg);
      s.apply_inverse_fourier(reg);
      for (std::size_t i = 0; i < amps.size(); ++i) CHECK(close(s[i], in[i], 1e-12));
    }
  }
}

TEST_CASE("register and dimension checks") {
  CHECK_THROWS_AS(qft_mod_k(basis1(3, 0), 1), std::out_of_range);
  CHECK_THROWS_AS(StateVector(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(kMaxQuditDim + 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(basis1(3, 3), std::out_of_range);
  CHECK_THROWS_AS(StateVector::from_amplitudes(3, 1, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("norm drift over a 100-gate sequence") {
  std::mt19937_64 rng(2);
  for (std::int64_t k : {3, 5, 11}) {
    const std::int64_t l[] = {1, 2};
    StateVector s = StateVector::basis(k, l);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int gate = 0; gate < 100; ++gate) {
      const int reg = static_cast<int>(rng() % 2);
      switch (rng() % 4) {
        case 0:
          s.apply_fourier(reg, 1 + static_cast<std::int64_t>(rng() % (k - 1)));
          break;
        case 1:
          s.apply_inverse_fourier(reg);
          break;
        case 2: {
          std::vector<Amplitude> ph(static_cast<std::size_t>(k));
          for (auto& p : ph) p = std::polar(1.0, angle(rng));
          s.apply_diagonal(reg, ph);
          break;
        }
        default: {
          std::vector<std::int64_t> shift(static_cast<std::size_t>(k));
          for (auto& x : shift) x = static_cast<std::int64_t>(rng() % (k - 1));
          s.apply_controlled_shift(shift, k - 1);
          break;
        }
      }
    }
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
  }
}

TEST_CASE("Legendre state examples") {
  const StateVector five = prepare_legendre_state(5);
  const Amplitude expected5[] = {0.0, 0.5, -0.5, -0.5, 0.5};
  for (std::size_t n = 0; n < 5; ++n) CHECK(close(five[n], expected5[n], 1e-12));
  CHECK(five[0] == Amplitude(0.0, 0.0));

  const StateVector three = prepare_legendre_state(3);
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK(close(three[1], r2, 1e-12));
  CHECK(close(three[2], -r2, 1e-12));
  CHECK(three[0] == Amplitude(0.0, 0.0));

  CHECK_THROWS_AS(prepare_legendre_state(9), std::invalid_argument);
  CHECK_THROWS_AS(prepare_legendre_state(2), std::invalid_argument);
}

TEST_CASE("Legendre state matches the character table") {
  for (std::int64_t k : {3, 5, 7, 11, 13, 17, 19, 23, 101}) {
    const StateVector s = prepare_legendre_state(k);
    const StateVector exact = legendre_state(k);
    CHECK(s.registers() == 1);
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
    CHECK(s[0] == Amplitude(0.0, 0.0));
    const Character chi(k);
    const double amp = 1.0 / std::sqrt(static_cast<double>(k - 1));
    for (std::int64_t n = 1; n < k; ++n) {
      CHECK(close(s[static_cast<std::size_t>(n)], chi(n) * amp, 1e-10));
    }
    CHECK(std::abs(std::abs(s.inner(exact)) - 1.0) < 1e-10);
  }
}

TEST_CASE("gauss_phase_encode examples") {
  const StateVector chi5 = legendre_state(5);
  const StateVector a1 = gauss_phase_encode(chi5, 1);
  const StateVector a2 = gauss_phase_encode(chi5, 2);
  for (std::size_t n = 0; n < 5; ++n) {
    CHECK(close(a1[n], chi5[n], 1e-12));
    CHECK(close(a2[n], -chi5[n], 1e-12));
  }
  const StateVector chi3 = legendre_state(3);
  const StateVector b = gauss_phase_encode(chi3, 1);
  for (std::size_t n = 0; n < 3; ++n) CHECK(close(b[n], Amplitude(0.0, -1.0) * chi3[n], 1e-12));

  CHECK_THROWS_AS(gauss_phase_encode(chi5, 10), std::invalid_argument);
  CHECK_THROWS_AS(gauss_phase_encode(basis1(5, 1), 1), std::invalid_argument);
}

TEST_CASE("gauss_phase_encode produces G(k, a)/sqrt(k) times |chi>") {
  for (std::int64_t k : {3, 5, 7, 11, 13}) {
    const StateVector chi = prepare_legendre_state(k);
    for (std::int64_t a = 1; a < k; ++a) {
      const StateVector out = gauss_phase_encode(chi, a);
      const Amplitude overlap = chi.inner(out);
      const Amplitude expected = gauss_sum_brute(k, a) / std::sqrt(static_cast<double>(k));
      CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-9);
      CHECK(std::abs(std::arg(overlap / expected)) < 1e-9);
    }
  }
}

TEST_CASE("Hoeffding schedule") {
  CHECK(hoeffding_samples(0.05) == static_cast<std::int64_t>(std::ceil(8.0 * std::log(40.0) / 0.0025)));
  for (double eps : {0.5, 0.2, 0.05, 0.01}) {
    CHECK(hoeffding_halfwidth(hoeffding_samples(eps)) <= eps);
  }
  CHECK_THROWS_AS(hoeffding_samples(0.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_samples(1.0), std::invalid_argument);
}

TEST_CASE("control probabilities") {
  const auto [px, py] = control_probabilities(5, 2);
  CHECK(px == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(py == doctest::Approx(0.5).epsilon(1e-12));
  const auto [qx, qy] = control_probabilities(3, 1);
  CHECK(qx == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(qy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("phase_estimate examples") {
  const PhaseEstimate e52 = phase_estimate(5, 2, 0.05, 7);
  CHECK(angle_distance(e52.phi, kPi) <= 0.05);
  CHECK(e52.phi_true == doctest::Approx(kPi));
  CHECK(e52.samples == hoeffding_samples(0.05));
  CHECK(e52.ci_halfwidth <= 0.05);
  CHECK(e52.seed == 7);

  CHECK(angle_distance(phase_estimate(5, 1, 0.05, 7).phi, 0.0) <= 0.05);
  CHECK(angle_distance(phase_estimate(3, 1, 0.05, 7).phi, -kPi / 2) <= 0.05);

  const PhaseEstimate again = phase_estimate(5, 2, 0.05, 7);
  CHECK(again.phi == e52.phi);

  CHECK_THROWS_AS(phase_estimate(5, 5, 0.05, 0), std::invalid_argument);
  CHECK_THROWS_AS(phase_estimate(5, 1, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(phase_estimate(9, 1, 0.05, 0), std::invalid_argument);
}

TEST_CASE("phase_estimate trials are reproducible") {
  const auto a = phase_estimate_trials(7, 3, 0.1, 42, 16);
  const auto b = phase_estimate_trials(7, 3, 0.1, 42, 16);
  REQUIRE(a.size() == 16);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].phi == b[i].phi);
    CHECK(a[i].seed == trial_seed(42, i));
    CHECK(a[i].phi == phase_estimate(7, 3, 0.1, trial_seed(42, i)).phi);
  }
  CHECK(trial_seed(42, 0) != trial_seed(42, 1));
}

TEST_CASE("angle_distance wraps") {
  CHECK(angle_distance(kPi - 0.01, -kPi + 0.01) == doctest::Approx(0.02));
  CHECK(angle_distance(0.3, 0.1) == doctest::Approx(0.2));
  CHECK(angle_distance(-3.1403, kPi) < 0.01);
}
