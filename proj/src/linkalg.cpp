#include "qtopo/linkalg.hpp"

#include <stdexcept>
#include <string>
#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace qtopo {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("linking matrix entry overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("linking matrix entry overflow");
  return out;
}

void check_index(const FramedLinkMatrix& j, std::size_t i, const char* op) {
  if (i >= j.size()) {
    throw std::invalid_argument(std::string(op) + ": component index " + std::to_string(i) +
                                " out of range for m=" + std::to_string(j.size()));
  }
}

void check_sign(int sign, const char* op) {
  if (sign != 1 && sign != -1) throw std::invalid_argument(std::string(op) + ": sign must be +1 or -1");
}

}  // namespace

// ---------------------------------------------------------------------------
// FramedLinkMatrix

FramedLinkMatrix::FramedLinkMatrix(std::size_t m) : m_(m), entries_(m * m, 0) {}

FramedLinkMatrix::FramedLinkMatrix(
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> v;
  for (const auto& r : rows) v.emplace_back(r);
  *this = from_rows(v);
}

FramedLinkMatrix FramedLinkMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  FramedLinkMatrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t c = 0; c < rows.size(); ++c) out.entries_[i * out.m_ + c] = rows[i][c];
  }
  for (std::size_t i = 0; i < out.m_; ++i) {
    for (std::size_t c = i + 1; c < out.m_; ++c) {
      if (out(i, c) != out(c, i)) {
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(c) + ")");
      }
    }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> FramedLinkMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(m_, std::vector<std::int64_t>(m_));
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t c = 0; c < m_; ++c) out[i][c] = (*this)(i, c);
  return out;
}

std::int64_t FramedLinkMatrix::quadratic_form(const std::vector<std::int64_t>& n) const {
  if (n.size() != m_) throw std::invalid_argument("quadratic_form: vector length does not match m");
  std::int64_t q = 0;
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t c = 0; c < m_; ++c)
      q = checked_add(q, checked_mul(checked_mul(n[i], (*this)(i, c)), n[c]));
  return q;
}

// ---------------------------------------------------------------------------
// Exact integer helpers

BigMatrix BigMatrix::identity(std::size_t n) {
  BigMatrix out{n, std::vector<BigInt>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

BigMatrix to_big(const FramedLinkMatrix& j) {
  BigMatrix out{j.size(), std::vector<BigInt>(j.size() * j.size())};
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < j.size(); ++c) out(r, c) = j(r, c);
  return out;
}

BigInt determinant(const BigMatrix& input) {
  const std::size_t n = input.n;
  if (n == 0) return 1;
  BigMatrix m = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t c = k + 1; c < n; ++c) {
        m(i, c) = (m(i, c) * m(k, k) - m(i, k) * m(k, c)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

BigInt determinant(const FramedLinkMatrix& j) { return determinant(to_big(j)); }

BigMatrix congruence(const FramedLinkMatrix& j, const BigMatrix& u) {
  const std::size_t n = j.size();
  if (u.n != n) throw std::invalid_argument("congruence: dimension mismatch");
  BigMatrix ju{n, std::vector<BigInt>(n * n, 0)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t x = 0; x < n; ++x) ju(r, c) += j(r, x) * u(x, c);
  BigMatrix out{n, std::vector<BigInt>(n * n, 0)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t x = 0; x < n; ++x) out(r, c) += u(x, r) * ju(x, c);
  return out;
}

// ---------------------------------------------------------------------------
// Kirby moves

FramedLinkMatrix blow_up(const FramedLinkMatrix& j, int sign) {
  check_sign(sign, "blow_up");
  const std::size_t m = j.size();
  FramedLinkMatrix out(m + 1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = r; c < m; ++c) out.set(r, c, j(r, c));
  out.set(m, m, sign);
  return out;
}

bool can_blow_down(const FramedLinkMatrix& j, std::size_t i) noexcept {
  if (i >= j.size()) return false;
  if (j(i, i) != 1 && j(i, i) != -1) return false;
  for (std::size_t c = 0; c < j.size(); ++c)
    if (c != i && j(i, c) != 0) return false;
  return true;
}

FramedLinkMatrix blow_down(const FramedLinkMatrix& j, std::size_t i) {
  check_index(j, i, "blow_down");
  if (!can_blow_down(j, i)) {
    throw std::invalid_argument("blow_down: component " + std::to_string(i) +
                                " is not a split unknot with framing +-1");
  }
  const std::size_t m = j.size();
  FramedLinkMatrix out(m - 1);
  for (std::size_t r = 0, rr = 0; r < m; ++r) {
    if (r == i) continue;
    for (std::size_t c = 0, cc = 0; c < m; ++c) {
      if (c == i) continue;
      out.set(rr, cc, j(r, c));
      ++cc;
    }
    ++rr;
  }
  return out;
}

FramedLinkMatrix handle_slide(const FramedLinkMatrix& j, std::size_t i, std::size_t over,
                              int sign) {
  check_index(j, i, "handle_slide");
  check_index(j, over, "handle_slide");
  check_sign(sign, "handle_slide");
  if (i == over) throw std::invalid_argument("handle_slide: cannot slide a component over itself");
  FramedLinkMatrix out = j;
  const std::int64_t diag =
      checked_add(checked_add(j(i, i), checked_mul(2 * sign, j(i, over))), j(over, over));
  for (std::size_t c = 0; c < j.size(); ++c) {
    if (c == i) continue;
    out.set(i, c, checked_add(j(i, c), checked_mul(sign, j(over, c))));
  }
  out.set(i, i, diag);
  return out;
}

// ---------------------------------------------------------------------------
// Signature

int signature(const FramedLinkMatrix& j) {
  const std::size_t m = j.size();
  std::vector<Rational> a(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) a[r * m + c] = j(r, c);
  auto at = [&](std::size_t r, std::size_t c) -> Rational& { return a[r * m + c]; };

  std::vector<bool> done(m, false);
  int sig = 0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t pivot = m;
    for (std::size_t i = 0; i < m && pivot == m; ++i)
      if (!done[i] && at(i, i) != 0) pivot = i;
    if (pivot == m) {
      // Zero diagonal: b_i += b_j turns a nonzero off-diagonal into 2 a_ij.
      for (std::size_t i = 0; i < m && pivot == m; ++i) {
        if (done[i]) continue;
        for (std::size_t c = i + 1; c < m; ++c) {
          if (done[c] || at(i, c) == 0) continue;
          for (std::size_t x = 0; x < m; ++x) at(i, x) += at(c, x);
          for (std::size_t x = 0; x < m; ++x) at(x, i) += at(x, c);
          pivot = i;
          break;
        }
      }
    }
    if (pivot == m) break;  // remaining block is zero
    const Rational p = at(pivot, pivot);
    sig += p > 0 ? 1 : -1;
    done[pivot] = true;
    for (std::size_t c = 0; c < m; ++c) {
      if (done[c] || at(pivot, c) == 0) continue;
      const Rational f = at(pivot, c) / p;
      for (std::size_t x = 0; x < m; ++x) at(c, x) -= f * at(pivot, x);
      for (std::size_t x = 0; x < m; ++x) at(x, c) -= f * at(x, pivot);
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Diagonalization mod p^e

namespace {

class ModElimination {
 public:
  ModElimination(const FramedLinkMatrix& j, const ModK& ring)
      : ring_(ring), m_(j.size()), a_(m_ * m_), u_(BigMatrix::identity(m_)) {
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < m_; ++c) at(r, c) = ring_.reduce(j(r, c));
  }

  DiagonalizationResult run() {
    for (std::size_t r = 0; r < m_; ++r) {
      const auto pivot = find_pivot(r);
      if (!pivot) break;  // remaining block is 0 mod k
      auto [pi, pj] = *pivot;
      if (pi != pj) add_multiple(pi, pj, 1);
      swap(r, pi);
      clear(r);
    }
    DiagonalizationResult out;
    for (std::size_t r = 0; r < m_; ++r) out.d.push_back(at(r, r));
    if (m_ > 0 && determinant(u_) < 0) {
      for (std::size_t x = 0; x < m_; ++x) u_(x, 0) = -u_(x, 0);
    }
    out.u = std::move(u_);
    return out;
  }

 private:
  std::int64_t& at(std::size_t r, std::size_t c) { return a_[r * m_ + c]; }

  // Minimal-valuation entry in the trailing block; a diagonal entry wins ties,
  // then the lowest row index.
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t from) {
    int best = ring_.exponent();
    std::optional<std::pair<std::size_t, std::size_t>> diag, off;
    for (std::size_t i = from; i < m_; ++i) {
      for (std::size_t c = i; c < m_; ++c) {
        const int v = ring_.valuation(at(i, c));
        if (v >= ring_.exponent()) continue;
        if (v < best) {
          best = v;
          diag.reset();
          off.reset();
        }
        if (v == best) {
          if (i == c && !diag) diag = {i, c};
          if (i != c && !off) off = {i, c};
        }
      }
    }
    return diag ? diag : off;
  }

  // Basis change b_target += t * b_source.
  void add_multiple(std::size_t target, std::size_t source, std::int64_t t) {
    const std::int64_t tr = ring_.reduce(t);
    for (std::size_t x = 0; x < m_; ++x) at(target, x) = ring_.add(at(target, x), ring_.mul(tr, at(source, x)));
    for (std::size_t x = 0; x < m_; ++x) at(x, target) = ring_.add(at(x, target), ring_.mul(tr, at(x, source)));
    for (std::size_t x = 0; x < m_; ++x) u_(x, target) += t * u_(x, source);
  }

  void swap(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t x = 0; x < m_; ++x) std::swap(at(r, x), at(s, x));
    for (std::size_t x = 0; x < m_; ++x) std::swap(at(x, r), at(x, s));
    for (std::size_t x = 0; x < m_; ++x) std::swap(u_(x, r), u_(x, s));
  }

  void clear(std::size_t r) {
    const std::int64_t pivot = at(r, r);
    const int v = ring_.valuation(pivot);
    std::int64_t pv = 1;
    for (int i = 0; i < v; ++i) pv *= ring_.prime();
    const std::int64_t unit_inv = ring_.inverse(pivot / pv);
    const std::int64_t k = ring_.modulus();
    for (std::size_t c = r + 1; c < m_; ++c) {
      if (at(r, c) == 0) continue;
      // at(r, c) is divisible by p^v because the pivot has minimal valuation.
      std::int64_t t = ring_.mul(at(r, c) / pv, unit_inv);
      t = ring_.reduce(-t);
      if (t > k / 2) t -= k;
      add_multiple(c, r, t);
    }
  }

  const ModK& ring_;
  std::size_t m_;
  std::vector<std::int64_t> a_;
  BigMatrix u_;
};

}  // namespace

DiagonalizationResult diagonalize_mod_k(const FramedLinkMatrix& j, const ModK& ring) {
  return ModElimination(j, ring).run();
}

}  // namespace qtopo
