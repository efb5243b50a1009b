#pragma once

// Modular arithmetic, the Legendre character, discrete logarithms and
// quadratic Gauss sums.
//
// Sign convention: every Gauss sum in this library uses the negative
// exponent, G(k, a) = sum_{n=0}^{k-1} exp(-2 pi i a n^2 / k).

#include <complex>
#include <cstdint>
#include <vector>

namespace qtopo {

using GaussValue = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// (a * b) mod m without overflow for any 0 <= a, b < m < 2^63.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
// Canonical representative of x in [0, m).
std::int64_t reduce_mod(std::int64_t x, std::int64_t m);
bool is_prime(std::int64_t n);
// Distinct prime factors in increasing order.
std::vector<std::int64_t> prime_factors(std::int64_t n);

// Residue ring Z/kZ for k = p^e with p an odd prime.
class ModK {
 public:
  // Throws std::invalid_argument unless k is an odd prime power.
  explicit ModK(std::int64_t k);

  std::int64_t modulus() const noexcept { return k_; }
  std::int64_t prime() const noexcept { return p_; }
  int exponent() const noexcept { return e_; }

  std::int64_t reduce(std::int64_t x) const noexcept { return reduce_mod(x, k_); }
  std::int64_t add(std::int64_t a, std::int64_t b) const noexcept;
  std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept;
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept;
  std::int64_t pow(std::int64_t a, std::int64_t n) const noexcept;
  // Inverse of a unit; throws std::invalid_argument if p divides a.
  std::int64_t inverse(std::int64_t a) const;
  // p-adic valuation of the residue, capped at e (so valuation(0) == e).
  int valuation(std::int64_t a) const noexcept;

 private:
  std::int64_t k_;
  std::int64_t p_;
  int e_;
};

// Legendre symbol (n/k) for an odd prime k, by Euler's criterion.
int legendre_chi(std::int64_t n, std::int64_t k);

// Table of the Legendre character mod an odd prime, built once.
class Character {
 public:
  explicit Character(std::int64_t k);

  std::int64_t modulus() const noexcept { return k_; }
  int operator()(std::int64_t n) const noexcept {
    return table_[static_cast<std::size_t>(reduce_mod(n, k_))];
  }
  const std::vector<std::int8_t>& table() const noexcept { return table_; }

 private:
  std::int64_t k_;
  std::vector<std::int8_t> table_;
};

// Smallest generator of (Z/kZ)^* for an odd prime k.
std::int64_t primitive_root(std::int64_t k);
bool is_generator(std::int64_t g, std::int64_t k);

// x in [0, k-1) with g^x = n (mod k); baby-step giant-step.
std::int64_t discrete_log(std::int64_t n, std::int64_t g, std::int64_t k);

// Direct O(k) summation. Accepts any k >= 2.
GaussValue gauss_sum_brute(std::int64_t k, std::int64_t a);

// chi(a) * conj(eps_k) * sqrt(k) for an odd prime k and a coprime to k,
// with eps_k = 1 (k = 1 mod 4) or i (k = 3 mod 4).
GaussValue gauss_sum_closed(std::int64_t k, std::int64_t a);

// Phase 3 pi (k - 2) / (4k) picked up by the unnormalized Wilson-loop sum
// under a blow-up.
double kirby_phase(std::int64_t k);

}  // namespace qtopo
