#pragma once

// Linking matrices of framed links and the moves and reductions that act on
// them: Kirby moves, exact signature, and congruence diagonalization mod p^e.

#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qtopo/numtheory.hpp"

namespace qtopo {

using BigInt = boost::multiprecision::cpp_int;

// Symmetric integer matrix: linking numbers off the diagonal, framings on it.
class FramedLinkMatrix {
 public:
  FramedLinkMatrix() = default;
  // m x m zero matrix.
  explicit FramedLinkMatrix(std::size_t m);
  // Throws std::invalid_argument if rows are ragged or not symmetric.
  FramedLinkMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static FramedLinkMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t size() const noexcept { return m_; }
  bool empty() const noexcept { return m_ == 0; }

  std::int64_t operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * m_ + j];
  }
  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, std::int64_t v) noexcept {
    entries_[i * m_ + j] = v;
    entries_[j * m_ + i] = v;
  }

  std::vector<std::vector<std::int64_t>> rows() const;
  // n^T J n, exact.
  std::int64_t quadratic_form(const std::vector<std::int64_t>& n) const;

  friend bool operator==(const FramedLinkMatrix&, const FramedLinkMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::int64_t> entries_;
};

// Dense square matrix of arbitrary-precision integers.
struct BigMatrix {
  std::size_t n = 0;
  std::vector<BigInt> a;

  static BigMatrix identity(std::size_t n);
  BigInt& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

BigMatrix to_big(const FramedLinkMatrix& j);
// Exact determinant (fraction-free Bareiss elimination).
BigInt determinant(const BigMatrix& m);
BigInt determinant(const FramedLinkMatrix& j);
// U^T J U over the integers.
BigMatrix congruence(const FramedLinkMatrix& j, const BigMatrix& u);

// Kirby moves.
FramedLinkMatrix blow_up(const FramedLinkMatrix& j, int sign);
FramedLinkMatrix blow_down(const FramedLinkMatrix& j, std::size_t i);
bool can_blow_down(const FramedLinkMatrix& j, std::size_t i) noexcept;
// Slide component i over component j: E^T J E with E = I + sign * e_j e_i^T.
FramedLinkMatrix handle_slide(const FramedLinkMatrix& j, std::size_t i, std::size_t over,
                              int sign);

// (#positive - #negative) eigenvalues, by exact rational congruence.
int signature(const FramedLinkMatrix& j);

struct DiagonalizationResult {
  BigMatrix u;                    // det(u) == +1
  std::vector<std::int64_t> d;    // residues in [0, k)
};

// Unimodular U with U^T J U = diag(d) (mod k), k = p^e, p odd.
DiagonalizationResult diagonalize_mod_k(const FramedLinkMatrix& j, const ModK& ring);

}  // namespace qtopo
