#include "qtopo/numtheory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

#include "qtopo/detail/summation.hpp"

namespace qtopo {

namespace {

void require_odd_prime(std::int64_t k, const char* what) {
  if (k < 3 || k % 2 == 0 || !is_prime(k)) {
    throw std::invalid_argument(std::string(what) + ": modulus " + std::to_string(k) +
                                " is not an odd prime");
  }
}

std::int64_t isqrt_ceil(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

}  // namespace

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<unsigned __int128>(a) *
                                   static_cast<unsigned __int128>(b) %
                                   static_cast<unsigned __int128>(m));
}

std::int64_t reduce_mod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t result = 1;
  base = reduce_mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::int64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// ModK

ModK::ModK(std::int64_t k) : k_(k), p_(0), e_(0) {
  if (k < 3 || k % 2 == 0) {
    throw std::invalid_argument("modulus " + std::to_string(k) +
                                " must be an odd prime power >= 3");
  }
  const auto factors = prime_factors(k);
  if (factors.size() != 1) {
    throw std::invalid_argument("modulus " + std::to_string(k) + " is not a prime power");
  }
  p_ = factors.front();
  for (std::int64_t r = k; r > 1; r /= p_) ++e_;
}

std::int64_t ModK::add(std::int64_t a, std::int64_t b) const noexcept {
  return reduce(reduce(a) + reduce(b));
}

std::int64_t ModK::sub(std::int64_t a, std::int64_t b) const noexcept {
  return reduce(reduce(a) - reduce(b));
}

std::int64_t ModK::mul(std::int64_t a, std::int64_t b) const noexcept {
  return mul_mod(reduce(a), reduce(b), k_);
}

std::int64_t ModK::pow(std::int64_t a, std::int64_t n) const noexcept {
  return pow_mod(a, n, k_);
}

std::int64_t ModK::inverse(std::int64_t a) const {
  a = reduce(a);
  if (a % p_ == 0) {
    throw std::invalid_argument(std::to_string(a) + " is not a unit mod " + std::to_string(k_));
  }
  // Extended Euclid.
  std::int64_t r0 = k_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return reduce(t0);
}

int ModK::valuation(std::int64_t a) const noexcept {
  a = reduce(a);
  if (a == 0) return e_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Characters

int legendre_chi(std::int64_t n, std::int64_t k) {
  require_odd_prime(k, "legendre_chi");
  const std::int64_t r = reduce_mod(n, k);
  if (r == 0) return 0;
  return pow_mod(r, (k - 1) / 2, k) == 1 ? 1 : -1;
}

Character::Character(std::int64_t k) : k_(k) {
  require_odd_prime(k, "Character");
  table_.assign(static_cast<std::size_t>(k), -1);
  table_[0] = 0;
  // Squares of 1 .. (k-1)/2 hit every quadratic residue exactly once.
  for (std::int64_t x = 1; x <= (k - 1) / 2; ++x) {
    table_[static_cast<std::size_t>(mul_mod(x, x, k))] = 1;
  }
}

bool is_generator(std::int64_t g, std::int64_t k) {
  g = reduce_mod(g, k);
  if (g == 0) return false;
  for (std::int64_t q : prime_factors(k - 1)) {
    if (pow_mod(g, (k - 1) / q, k) == 1) return false;
  }
  return true;
}

std::int64_t primitive_root(std::int64_t k) {
  require_odd_prime(k, "primitive_root");
  for (std::int64_t g = 2;; ++g) {
    if (is_generator(g, k)) return g;
  }
}

std::int64_t discrete_log(std::int64_t n, std::int64_t g, std::int64_t k) {
  require_odd_prime(k, "discrete_log");
  n = reduce_mod(n, k);
  if (n == 0) throw std::invalid_argument("discrete_log: argument is 0 mod k");
  if (!is_generator(g, k)) {
    throw std::invalid_argument("discrete_log: " + std::to_string(g) +
                                " does not generate the unit group mod " + std::to_string(k));
  }
  const std::int64_t order = k - 1;
  const std::int64_t step = isqrt_ceil(order);

  // Baby steps: g^j for j in [0, step).
  std::unordered_map<std::int64_t, std::int64_t> baby;
  baby.reserve(static_cast<std::size_t>(step));
  std::int64_t cur = 1;
  for (std::int64_t j = 0; j < step; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, g, k);
  }
  // Giant steps: n * g^(-step*i).
  const std::int64_t giant = pow_mod(pow_mod(g, order - 1, k), step, k);
  std::int64_t gamma = n;
  for (std::int64_t i = 0; i <= step; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      return (i * step + it->second) % order;
    }
    gamma = mul_mod(gamma, giant, k);
  }
  throw std::logic_error("discrete_log: no solution for a verified generator");
}

// ---------------------------------------------------------------------------
// Gauss sums

GaussValue gauss_sum_brute(std::int64_t k, std::int64_t a) {
  if (k < 2) throw std::invalid_argument("gauss_sum_brute: k must be >= 2");
  const std::int64_t ar = reduce_mod(a, k);
  const double step = -2.0 * kPi / static_cast<double>(k);
  return detail::blocked_sum(k, [&](std::int64_t n) {
    const std::int64_t r = mul_mod(ar, mul_mod(n, n, k), k);
    return std::polar(1.0, step * static_cast<double>(r));
  });
}

GaussValue gauss_sum_closed(std::int64_t k, std::int64_t a) {
  require_odd_prime(k, "gauss_sum_closed");
  const int chi = legendre_chi(a, k);
  if (chi == 0) {
    throw std::invalid_argument("gauss_sum_closed: a is not coprime to k");
  }
  const double mag = chi * std::sqrt(static_cast<double>(k));
  return k % 4 == 1 ? GaussValue{mag, 0.0} : GaussValue{0.0, -mag};
}

double kirby_phase(std::int64_t k) {
  if (k < 2) throw std::invalid_argument("kirby_phase: k must be >= 2");
  return 3.0 * kPi * static_cast<double>(k - 2) / (4.0 * static_cast<double>(k));
}

}  // namespace qtopo
