#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qtopo/numtheory.hpp"

using namespace qtopo;

namespace {

bool close(GaussValue a, GaussValue b, double tol) { return std::abs(a - b) < tol; }

const double kSqrt5 = std::sqrt(5.0);
const double kSqrt3 = std::sqrt(3.0);

std::vector<std::int64_t> odd_primes_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 3; k <= n; k += 2)
    if (is_prime(k)) out.push_back(k);
  return out;
}

}  // namespace

TEST_CASE("primality and factoring") {
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_FALSE(is_prime(3215031751));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
}

TEST_CASE("ModK validates the modulus and reduces canonically") {
  const ModK r25(25);
  CHECK(r25.prime() == 5);
  CHECK(r25.exponent() == 2);
  CHECK(r25.reduce(-1) == 24);
  CHECK(r25.mul(7, 18) == 126 % 25);
  CHECK(r25.mul(r25.inverse(7), 7) == 1);
  CHECK(r25.valuation(0) == 2);
  CHECK(r25.valuation(10) == 1);
  CHECK(r25.valuation(3) == 0);
  CHECK_THROWS_AS(r25.inverse(15), std::invalid_argument);

  CHECK_THROWS_AS(ModK(2), std::invalid_argument);
  CHECK_THROWS_AS(ModK(8), std::invalid_argument);
  CHECK_THROWS_AS(ModK(15), std::invalid_argument);
  CHECK_NOTHROW(ModK(3));
  CHECK_NOTHROW(ModK(243));
}

TEST_CASE("legendre_chi examples") {
  CHECK(legendre_chi(2, 5) == -1);
  CHECK(legendre_chi(0, 7) == 0);
  CHECK(legendre_chi(4, 5) == 1);
  CHECK(legendre_chi(-1, 5) == 1);
  CHECK(legendre_chi(-1, 7) == -1);
  CHECK(legendre_chi(14, 7) == 0);
}

TEST_CASE("legendre_chi rejects non-prime or even moduli") {
  CHECK_THROWS_AS(legendre_chi(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(legendre_chi(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(legendre_chi(1, 9), std::invalid_argument);
  CHECK_THROWS_AS(legendre_chi(1, 8), std::invalid_argument);
}

TEST_CASE("legendre_chi agrees with the squares oracle and the table") {
  for (std::int64_t k : odd_primes_upto(61)) {
    const Character chi(k);
    int plus = 0, minus = 0;
    for (std::int64_t n = 0; n < k; ++n) {
      const int expected = oracle::legendre_by_squares(n, k);
      CHECK(legendre_chi(n, k) == expected);
      CHECK(chi(n) == expected);
      CHECK(legendre_chi(n + 3 * k, k) == expected);
      CHECK(legendre_chi(n - 5 * k, k) == expected);
      plus += expected == 1;
      minus += expected == -1;
    }
    CHECK(chi(0) == 0);
    CHECK(plus == (k - 1) / 2);
    CHECK(minus == (k - 1) / 2);
  }
}

TEST_CASE("legendre_chi is multiplicative over random pairs") {
  std::mt19937_64 rng(20240917);
  const auto primes = odd_primes_upto(211);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<std::int64_t> val(-100000, 100000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t k = primes[pick(rng)];
    const std::int64_t a = val(rng), b = val(rng);
    CHECK(legendre_chi(a * b, k) == legendre_chi(a, k) * legendre_chi(b, k));
  }
}

TEST_CASE("primitive_root examples and minimality") {
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(3) == 2);
  CHECK_THROWS_AS(primitive_root(9), std::invalid_argument);
  for (std::int64_t k : odd_primes_upto(400)) {
    const std::int64_t g = primitive_root(k);
    CHECK(oracle::order_of(g, k) == k - 1);
    for (std::int64_t h = 2; h < g; ++h) CHECK(oracle::order_of(h, k) < k - 1);
  }
}

TEST_CASE("discrete_log examples") {
  CHECK(discrete_log(3, 2, 5) == 3);
  CHECK(discrete_log(1, 2, 5) == 0);
  CHECK(discrete_log(1, 3, 7) == 0);
  CHECK(discrete_log(6, 3, 7) == 3);
}

TEST_CASE("discrete_log errors") {
  CHECK_THROWS_AS(discrete_log(0, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(discrete_log(10, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS(discrete_log(2, 4, 5), std::invalid_argument);  // 4 has order 2
  CHECK_THROWS_AS(discrete_log(2, 2, 7), std::invalid_argument);  // 2 has order 3
}

TEST_CASE("discrete_log inverts exponentiation") {
  for (std::int64_t k : odd_primes_upto(300)) {
    const std::int64_t g = primitive_root(k);
    for (std::int64_t x = 0; x < k - 1; ++x) CHECK(discrete_log(pow_mod(g, x, k), g, k) == x);
  }
  // A larger prime, cross-checked against exhaustive search at a few points.
  const std::int64_t k = 1000003;
  const std::int64_t g = primitive_root(k);
  for (std::int64_t n : {2, 3, 999999, 123456}) {
    CHECK(discrete_log(n, g, k) == oracle::discrete_log_exhaustive(n, g, k));
  }
}

TEST_CASE("gauss_sum_brute examples") {
  CHECK(close(gauss_sum_brute(5, 1), {kSqrt5, 0.0}, 1e-12));
  CHECK(close(gauss_sum_brute(3, 1), {0.0, -kSqrt3}, 1e-12));
  CHECK(close(gauss_sum_brute(5, 2), {-kSqrt5, 0.0}, 1e-12));
  CHECK(close(gauss_sum_brute(7, 0), {7.0, 0.0}, 1e-12));
  // Prime powers: G(9, 1) = 3, G(9, 3) = 3 G(3, 1) = -3 sqrt(3) i.
  CHECK(close(gauss_sum_brute(9, 1), {3.0, 0.0}, 1e-12));
  CHECK(close(gauss_sum_brute(9, 3), {0.0, -3.0 * kSqrt3}, 1e-12));
  CHECK_THROWS_AS(gauss_sum_brute(1, 1), std::invalid_argument);
}

TEST_CASE("gauss_sum_brute matches the naive oracle, including negative a") {
  for (std::int64_t k = 2; k <= 60; ++k) {
    for (std::int64_t a = -k; a <= 2 * k; ++a) {
      CHECK(close(gauss_sum_brute(k, a), oracle::gauss_sum_naive(k, a), 1e-10));
    }
  }
}

TEST_CASE("gauss_sum_brute stays accurate for large k") {
  // G(p, a) has modulus sqrt(p); exact reduction keeps this to ~1e-9 even
  // when a n^2 overflows 64 bits before reduction.
  const std::int64_t k = 1000003;
  const GaussValue g = gauss_sum_brute(k, 987654321987LL);
  CHECK(std::abs(std::abs(g) - std::sqrt(static_cast<double>(k))) < 1e-6);
  CHECK(close(g, gauss_sum_closed(k, 987654321987LL), 1e-6));
}

TEST_CASE("modulus law |G(k, a)| = sqrt(k)") {
  for (std::int64_t k : odd_primes_upto(101)) {
    for (std::int64_t a = 1; a < k; ++a) {
      CHECK(std::abs(std::abs(gauss_sum_brute(k, a)) - std::sqrt(static_cast<double>(k))) < 1e-9);
    }
  }
}

TEST_CASE("twist law G(k, a l) = chi(l^-1) G(k, a)") {
  for (std::int64_t k : odd_primes_upto(61)) {
    const ModK ring(k);
    CHECK(gauss_sum_brute(k, 0).real() == static_cast<double>(k));
    CHECK(gauss_sum_brute(k, 0).imag() == 0.0);
    for (std::int64_t a = 1; a < k; ++a) {
      for (std::int64_t l = 1; l < k; ++l) {
        const GaussValue lhs = gauss_sum_brute(k, a * l);
        const GaussValue rhs = static_cast<double>(legendre_chi(ring.inverse(l), k)) * gauss_sum_brute(k, a);
        CHECK(close(lhs, rhs, 1e-9));
      }
    }
  }
}

TEST_CASE("gauss_sum_closed examples, agreement and errors") {
  CHECK(close(gauss_sum_closed(5, 1), {kSqrt5, 0.0}, 1e-15));
  CHECK(close(gauss_sum_closed(3, 1), {0.0, -kSqrt3}, 1e-15));
  CHECK(close(gauss_sum_closed(5, 2), {-kSqrt5, 0.0}, 1e-15));
  for (std::int64_t k : odd_primes_upto(101)) {
    for (std::int64_t a = 1; a < k; ++a) CHECK(close(gauss_sum_closed(k, a), gauss_sum_brute(k, a), 1e-9));
  }
  CHECK_THROWS_AS(gauss_sum_closed(5, 10), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sum_closed(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sum_closed(4, 1), std::invalid_argument);
}

TEST_CASE("kirby_phase") {
  CHECK(kirby_phase(2) == 0.0);
  CHECK(kirby_phase(3) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(kirby_phase(6) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(kirby_phase(1), std::invalid_argument);
}
