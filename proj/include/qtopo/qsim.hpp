#pragma once

// Statevector simulation of the Gauss-sum phase estimation circuit over
// k-level registers (qudits), k an odd prime.
//
// Pipeline: prepare |chi> = (k-1)^{-1/2} sum_n chi(n) |n> by phase kickback
// from a Fourier-state ancilla; a parameterised Fourier transform turns |chi>
// into (G(k,a)/sqrt(k)) |chi>; a control qubit in |+> then reads the phase
// out through X- and Y-basis measurements.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qtopo/numtheory.hpp"

namespace qtopo {

using Amplitude = std::complex<double>;

inline constexpr std::int64_t kMaxQuditDim = 1024;

// One or two k-level registers; basis index n0 * k + n1 for two registers.
class StateVector {
 public:
  StateVector(std::int64_t k, int regs);
  static StateVector basis(std::int64_t k, std::span<const std::int64_t> levels);
  static StateVector from_amplitudes(std::int64_t k, int regs, std::vector<Amplitude> amps);

  std::int64_t dim() const noexcept { return k_; }
  int registers() const noexcept { return regs_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm_squared() const noexcept;

  // |p> -> size^{-1/2} sum_s exp(-2 pi i a p s / size) |s> on levels
  // [0, size) of register `reg`; levels >= size are left alone. size defaults
  // to k. Throws std::out_of_range for a bad register index.
  void apply_fourier(int reg, std::int64_t a = 1, std::int64_t size = 0);
  // Inverse of apply_fourier with the same arguments.
  void apply_inverse_fourier(int reg, std::int64_t a = 1, std::int64_t size = 0);
  // Multiplies the amplitude of level n of `reg` by phases[n].
  void apply_diagonal(int reg, std::span<const Amplitude> phases);
  // Two registers: |n>|l> -> |n>|(l + shift[n]) mod size> for l < size.
  void apply_controlled_shift(std::span<const std::int64_t> shift, std::int64_t size);

  // <this|other>
  Amplitude inner(const StateVector& other) const;

 private:
  void check_reg(int reg) const;
  void fourier(int reg, std::int64_t a, std::int64_t size, double sign);

  std::int64_t k_;
  int regs_;
  std::vector<Amplitude> amps_;
};

StateVector qft_mod_k(const StateVector& s, int reg);

// Exact |chi>, built directly from the character table.
StateVector legendre_state(std::int64_t k);

// |chi> prepared by the kickback circuit: uniform superposition over the
// units, ancilla in a Fourier state of Z/(k-1), controlled shift by
// ((k-1)/2) log_g(n), ancilla checked to be unentangled and discarded.
StateVector prepare_legendre_state(std::int64_t k);

// Multiplies each |n>, n != 0, of a one-register state by chi(n)^power using
// the same ancilla circuit.
StateVector apply_legendre_kickback(const StateVector& s, int power);

// Requires s = |chi> within 1e-10 and gcd(a, k) = 1. Returns a state equal to
// (G(k, a) / sqrt(k)) |chi>.
StateVector gauss_phase_encode(const StateVector& s, std::int64_t a);

struct PhaseEstimate {
  std::int64_t k = 0;
  std::int64_t a = 0;
  double phi = 0.0;        // estimate in (-pi, pi]
  double phi_true = 0.0;   // arg G(k, a) in (-pi, pi]
  std::int64_t samples = 0;  // per measurement basis
  double epsilon = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

// ceil(8 ln(40) / eps^2).
std::int64_t hoeffding_samples(double epsilon);
// Angle half-width of the joint 95% Hoeffding box on (cos, sin) after
// `samples` shots per basis.
double hoeffding_halfwidth(std::int64_t samples);

// Probabilities of the + outcome in the X and Y bases for the controlled
// encode on |+>|chi>; (1 + cos phi) / 2 and (1 + sin phi) / 2.
std::pair<double, double> control_probabilities(std::int64_t k, std::int64_t a);

PhaseEstimate phase_estimate(std::int64_t k, std::int64_t a, double epsilon, std::uint64_t seed);

// Seed of trial i under root seed r: splitmix64(r + i).
std::uint64_t trial_seed(std::uint64_t root, std::uint64_t trial);

// Independent trials, run in parallel; element i uses trial_seed(root, i).
std::vector<PhaseEstimate> phase_estimate_trials(std::int64_t k, std::int64_t a, double epsilon,
                                                 std::uint64_t root, std::size_t trials);

// Smallest |x - y| over representatives mod 2 pi.
double angle_distance(double x, double y);

}  // namespace qtopo
