#include "qtopo/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace qtopo {

namespace {

constexpr double kProductTolerance = 1e-10;
constexpr double kChiTolerance = 1e-10;

void require_qudit_prime(std::int64_t k, const char* op) {
  if (k < 3 || k % 2 == 0 || !is_prime(k)) {
    throw std::invalid_argument(std::string(op) + ": k = " + std::to_string(k) +
                                " is not an odd prime");
  }
  if (k > kMaxQuditDim) {
    throw std::invalid_argument(std::string(op) + ": k = " + std::to_string(k) +
                                " exceeds the simulator limit " + std::to_string(kMaxQuditDim));
  }
}

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x <= -kPi ? x + 2.0 * kPi : x;
}

// Uniform double in [0, 1) from the top 53 bits; platform independent.
double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::int64_t k, int regs) : k_(k), regs_(regs) {
  if (k < 2) throw std::invalid_argument("StateVector: dimension must be >= 2");
  if (regs != 1 && regs != 2) throw std::invalid_argument("StateVector: 1 or 2 registers");
  if (k > kMaxQuditDim) throw std::invalid_argument("StateVector: dimension above simulator limit");
  amps_.assign(static_cast<std::size_t>(regs == 1 ? k : k * k), Amplitude{0.0, 0.0});
}

StateVector StateVector::basis(std::int64_t k, std::span<const std::int64_t> levels) {
  StateVector s(k, static_cast<int>(levels.size()));
  std::size_t idx = 0;
  for (std::int64_t lv : levels) {
    if (lv < 0 || lv >= k) throw std::out_of_range("StateVector::basis: level out of range");
    idx = idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(lv);
  }
  s.amps_[idx] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::int64_t k, int regs, std::vector<Amplitude> amps) {
  StateVector s(k, regs);
  if (amps.size() != s.amps_.size()) throw std::invalid_argument("from_amplitudes: wrong length");
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const auto& x : amps_) acc += std::norm(x);
  return acc;
}

void StateVector::check_reg(int reg) const {
  if (reg < 0 || reg >= regs_) {
    throw std::out_of_range("register " + std::to_string(reg) + " out of range for " +
                            std::to_string(regs_) + " register(s)");
  }
}

void StateVector::fourier(int reg, std::int64_t a, std::int64_t size, double sign) {
  check_reg(reg);
  if (size == 0) size = k_;
  if (size < 1 || size > k_) throw std::invalid_argument("fourier: size out of range");
  if (std::gcd(reduce_mod(a, size), size) != 1) {
    throw std::invalid_argument("fourier: parameter a is not a unit mod " + std::to_string(size));
  }
  const std::int64_t ar = reduce_mod(a, size);
  std::vector<Amplitude> phase(static_cast<std::size_t>(size));
  for (std::int64_t r = 0; r < size; ++r) {
    phase[static_cast<std::size_t>(r)] =
        std::polar(1.0 / std::sqrt(static_cast<double>(size)),
                   sign * 2.0 * kPi * static_cast<double>(r) / static_cast<double>(size));
  }
  // Register 0 strides by k (when there are two registers), register 1 by 1.
  const std::size_t stride = (regs_ == 2 && reg == 0) ? static_cast<std::size_t>(k_) : 1;
  const std::size_t slices = amps_.size() / static_cast<std::size_t>(k_);
  std::vector<Amplitude> in(static_cast<std::size_t>(size));
  for (std::size_t sl = 0; sl < slices; ++sl) {
    const std::size_t base = stride == 1 ? sl * static_cast<std::size_t>(k_) : sl;
    for (std::int64_t p = 0; p < size; ++p) in[static_cast<std::size_t>(p)] = amps_[base + stride * p];
    for (std::int64_t s = 0; s < size; ++s) {
      Amplitude acc{0.0, 0.0};
      for (std::int64_t p = 0; p < size; ++p) {
        const std::int64_t r = mul_mod(ar, mul_mod(p, s, size), size);
        acc += phase[static_cast<std::size_t>(r)] * in[static_cast<std::size_t>(p)];
      }
      amps_[base + stride * s] = acc;
    }
  }
}

void StateVector::apply_fourier(int reg, std::int64_t a, std::int64_t size) {
  fourier(reg, a, size, -1.0);
}

void StateVector::apply_inverse_fourier(int reg, std::int64_t a, std::int64_t size) {
  fourier(reg, a, size, +1.0);
}

void StateVector::apply_diagonal(int reg, std::span<const Amplitude> phases) {
  check_reg(reg);
  if (static_cast<std::int64_t>(phases.size()) != k_) {
    throw std::invalid_argument("apply_diagonal: need one phase per level");
  }
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    const std::size_t level =
        (regs_ == 2 && reg == 0) ? idx / static_cast<std::size_t>(k_) : idx % static_cast<std::size_t>(k_);
    amps_[idx] *= phases[level];
  }
}

void StateVector::apply_controlled_shift(std::span<const std::int64_t> shift, std::int64_t size) {
  if (regs_ != 2) throw std::logic_error("apply_controlled_shift: needs two registers");
  if (static_cast<std::int64_t>(shift.size()) != k_ || size < 1 || size > k_) {
    throw std::invalid_argument("apply_controlled_shift: bad shift table");
  }
  const auto k = static_cast<std::size_t>(k_);
  std::vector<Amplitude> out = amps_;
  for (std::size_t n = 0; n < k; ++n) {
    for (std::int64_t l = 0; l < size; ++l) {
      const std::int64_t to = reduce_mod(l + shift[n], size);
      out[n * k + static_cast<std::size_t>(to)] = amps_[n * k + static_cast<std::size_t>(l)];
    }
  }
  amps_ = std::move(out);
}

Amplitude StateVector::inner(const StateVector& other) const {
  if (other.amps_.size() != amps_.size()) throw std::invalid_argument("inner: shape mismatch");
  Amplitude acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
  return acc;
}

StateVector qft_mod_k(const StateVector& s, int reg) {
  StateVector out = s;
  out.apply_fourier(reg);
  return out;
}

// ---------------------------------------------------------------------------
// Legendre state

StateVector legendre_state(std::int64_t k) {
  require_qudit_prime(k, "legendre_state");
  const Character chi(k);
  std::vector<Amplitude> amps(static_cast<std::size_t>(k));
  const double c = 1.0 / std::sqrt(static_cast<double>(k - 1));
  for (std::int64_t n = 0; n < k; ++n) amps[static_cast<std::size_t>(n)] = c * chi(n);
  return StateVector::from_amplitudes(k, 1, std::move(amps));
}

StateVector apply_legendre_kickback(const StateVector& s, int power) {
  if (s.registers() != 1) throw std::invalid_argument("apply_legendre_kickback: one register expected");
  const std::int64_t k = s.dim();
  require_qudit_prime(k, "apply_legendre_kickback");
  const std::int64_t order = k - 1;
  const std::int64_t g = primitive_root(k);

  // Ancilla |1> Fourier-transformed over Z/(k-1): an eigenvector of every
  // shift x with eigenvalue exp(2 pi i x / (k-1)).
  const std::int64_t one[] = {1};
  StateVector anc = StateVector::basis(k, one);
  anc.apply_fourier(0, 1, order);

  std::vector<Amplitude> joint(static_cast<std::size_t>(k * k));
  for (std::int64_t n = 0; n < k; ++n)
    for (std::int64_t l = 0; l < k; ++l)
      joint[static_cast<std::size_t>(n * k + l)] = s[static_cast<std::size_t>(n)] * anc[static_cast<std::size_t>(l)];
  StateVector state = StateVector::from_amplitudes(k, 2, std::move(joint));

  // Shift by (k-1)/2 * log_g(n) picks up exp(i pi log_g n) = chi(n).
  std::vector<std::int64_t> shift(static_cast<std::size_t>(k), 0);
  for (std::int64_t n = 1; n < k; ++n) {
    shift[static_cast<std::size_t>(n)] = mul_mod((order / 2) % order, discrete_log(n, g, k), order);
  }
  for (int rep = 0; rep < power; ++rep) state.apply_controlled_shift(shift, order);

  // Project the ancilla back out and confirm nothing was left entangled.
  std::vector<Amplitude> reduced(static_cast<std::size_t>(k), Amplitude{0.0, 0.0});
  for (std::int64_t n = 0; n < k; ++n)
    for (std::int64_t l = 0; l < k; ++l)
      reduced[static_cast<std::size_t>(n)] +=
          std::conj(anc[static_cast<std::size_t>(l)]) * state[static_cast<std::size_t>(n * k + l)];
  double residual = 0.0;
  for (std::int64_t n = 0; n < k; ++n)
    for (std::int64_t l = 0; l < k; ++l)
      residual += std::norm(state[static_cast<std::size_t>(n * k + l)] -
                            reduced[static_cast<std::size_t>(n)] * anc[static_cast<std::size_t>(l)]);
  if (!(std::sqrt(residual) < kProductTolerance)) {
    throw std::logic_error("apply_legendre_kickback: ancilla left entangled");
  }
  return StateVector::from_amplitudes(k, 1, std::move(reduced));
}

StateVector prepare_legendre_state(std::int64_t k) {
  require_qudit_prime(k, "prepare_legendre_state");
  std::vector<Amplitude> uniform(static_cast<std::size_t>(k), Amplitude{0.0, 0.0});
  const double c = 1.0 / std::sqrt(static_cast<double>(k - 1));
  for (std::int64_t n = 1; n < k; ++n) uniform[static_cast<std::size_t>(n)] = c;
  return apply_legendre_kickback(StateVector::from_amplitudes(k, 1, std::move(uniform)), 1);
}

StateVector gauss_phase_encode(const StateVector& s, std::int64_t a) {
  if (s.registers() != 1) throw std::invalid_argument("gauss_phase_encode: one register expected");
  const std::int64_t k = s.dim();
  require_qudit_prime(k, "gauss_phase_encode");
  if (reduce_mod(a, k) == 0) throw std::invalid_argument("gauss_phase_encode: a must be coprime to k");
  const StateVector chi = legendre_state(k);
  double dist = 0.0;
  for (std::size_t i = 0; i < chi.amplitudes().size(); ++i) dist += std::norm(s[i] - chi[i]);
  if (!(std::sqrt(dist) < kChiTolerance)) {
    throw std::invalid_argument("gauss_phase_encode: input is not the Legendre state");
  }
  // Fourier transform with parameter a leaves amplitude G(k, a l)/sqrt(k(k-1))
  // = chi(l^{-1}) G(k, a)/sqrt(k(k-1)) on |l>; the second kickback pass
  // multiplies by chi(l)^2, which is 1 on every populated level.
  StateVector out = s;
  out.apply_fourier(0, a);
  return apply_legendre_kickback(out, 2);
}

// ---------------------------------------------------------------------------
// Phase estimation

std::int64_t hoeffding_samples(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  return static_cast<std::int64_t>(std::ceil(8.0 * std::log(40.0) / (epsilon * epsilon)));
}

double hoeffding_halfwidth(std::int64_t samples) {
  // Each basis at confidence 1 - 0.025; the coordinate estimates 2p - 1 move
  // by twice the frequency error.
  const double coord = 2.0 * std::sqrt(std::log(2.0 / 0.025) / (2.0 * static_cast<double>(samples)));
  return std::asin(std::min(1.0, std::sqrt(2.0) * coord));
}

std::pair<double, double> control_probabilities(std::int64_t k, std::int64_t a) {
  // Control branch 0 carries |chi>, branch 1 the encoded state.
  const StateVector b0 = prepare_legendre_state(k);
  const StateVector b1 = gauss_phase_encode(b0, a);
  double px = 0.0, py = 0.0;
  const Amplitude i{0.0, 1.0};
  for (std::size_t n = 0; n < b0.amplitudes().size(); ++n) {
    px += std::norm((b0[n] + b1[n]) * 0.5);
    py += std::norm((b0[n] - i * b1[n]) * 0.5);
  }
  return {px, py};
}

PhaseEstimate phase_estimate(std::int64_t k, std::int64_t a, double epsilon, std::uint64_t seed) {
  require_qudit_prime(k, "phase_estimate");
  PhaseEstimate est;
  est.k = k;
  est.a = a;
  est.epsilon = epsilon;
  est.seed = seed;
  est.samples = hoeffding_samples(epsilon);
  est.ci_halfwidth = hoeffding_halfwidth(est.samples);
  est.phi_true = wrap_angle(std::arg(gauss_sum_brute(k, a)));

  const auto [px, py] = control_probabilities(k, a);
  std::mt19937_64 rng(seed);
  std::int64_t hits_x = 0, hits_y = 0;
  for (std::int64_t s = 0; s < est.samples; ++s) hits_x += unit_uniform(rng()) < px;
  for (std::int64_t s = 0; s < est.samples; ++s) hits_y += unit_uniform(rng()) < py;
  const double n = static_cast<double>(est.samples);
  const double c = 2.0 * static_cast<double>(hits_x) / n - 1.0;
  const double sn = 2.0 * static_cast<double>(hits_y) / n - 1.0;
  est.phi = wrap_angle(std::atan2(sn, c));
  return est;
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t trial) {
  std::uint64_t z = root + trial + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<PhaseEstimate> phase_estimate_trials(std::int64_t k, std::int64_t a, double epsilon,
                                                 std::uint64_t root, std::size_t trials) {
  std::vector<PhaseEstimate> out(trials);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(trials, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers) {
          out[t] = phase_estimate(k, a, epsilon, trial_seed(root, t));
        }
      });
    }
  }
  return out;
}

double angle_distance(double x, double y) { return std::abs(wrap_angle(x - y)); }

}  // namespace qtopo
