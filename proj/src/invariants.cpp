#include "qtopo/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "qtopo/detail/summation.hpp"
#include "qtopo/errors.hpp"

namespace qtopo {

namespace {

struct RangeBounds {
  std::int64_t lo;
  std::int64_t count;
};

RangeBounds bounds(std::int64_t k, SumRange range) {
  switch (range) {
    case SumRange::kZeroToKMinus1: return {0, k};
    case SumRange::kOneToK: return {1, k};
    case SumRange::kOneToTwo: return {1, 2};
    case SumRange::kOneToKMinus1: return {1, k - 1};
  }
  throw std::invalid_argument("unknown summation range");
}

// Enumerates one block of the flattened index space [start, stop), last
// coordinate fastest, tracking Q = n^T J n and J n modulo den.
class BlockEnumerator {
 public:
  BlockEnumerator(const FramedLinkMatrix& j, RangeBounds b, PhaseScale scale,
                  const std::vector<GaussValue>& table)
      : m_(j.size()), b_(b), den_(scale.den), num_(reduce_mod(scale.num, scale.den)),
        table_(table), jmod_(m_ * m_) {
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < m_; ++c) jmod_[r * m_ + c] = reduce_mod(j(r, c), den_);
  }

  GaussValue sum(std::int64_t start, std::int64_t stop) {
    seek(start);
    GaussValue acc{0.0, 0.0};
    for (std::int64_t idx = start; idx < stop; ++idx) {
      acc += term();
      if (idx + 1 < stop) advance();
    }
    return acc;
  }

 private:
  std::int64_t jm(std::size_t r, std::size_t c) const { return jmod_[r * m_ + c]; }

  GaussValue term() const {
    const std::int64_t r = mul_mod(num_, q_, den_);
    if (!table_.empty()) return table_[static_cast<std::size_t>(r)];
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den_));
  }

  void seek(std::int64_t index) {
    digits_.assign(m_, 0);
    for (std::size_t i = m_; i-- > 0;) {
      digits_[i] = index % b_.count;
      index /= b_.count;
    }
    jn_.assign(m_, 0);
    q_ = 0;
    std::vector<std::int64_t> n(m_);
    for (std::size_t i = 0; i < m_; ++i) n[i] = reduce_mod(b_.lo + digits_[i], den_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t c = 0; c < m_; ++c) jn_[r] = (jn_[r] + mul_mod(jm(r, c), n[c], den_)) % den_;
      q_ = (q_ + mul_mod(n[r], jn_[r], den_)) % den_;
    }
  }

  // n_i += delta: Q += 2 delta (Jn)_i + delta^2 J_ii, Jn += delta J e_i.
  void shift(std::size_t i, std::int64_t delta) {
    const std::int64_t d = reduce_mod(delta, den_);
    const std::int64_t lin = mul_mod(mul_mod(2 % den_, d, den_), jn_[i], den_);
    const std::int64_t quad = mul_mod(mul_mod(d, d, den_), jm(i, i), den_);
    q_ = (q_ + lin + quad) % den_;
    for (std::size_t r = 0; r < m_; ++r) jn_[r] = (jn_[r] + mul_mod(d, jm(r, i), den_)) % den_;
  }

  void advance() {
    std::size_t i = m_;
    while (i-- > 0) {
      if (digits_[i] + 1 < b_.count) {
        ++digits_[i];
        shift(i, 1);
        return;
      }
      shift(i, -digits_[i]);
      digits_[i] = 0;
    }
  }

  std::size_t m_;
  RangeBounds b_;
  std::int64_t den_;
  std::int64_t num_;
  const std::vector<GaussValue>& table_;
  std::vector<std::int64_t> jmod_;
  std::vector<std::int64_t> digits_;
  std::vector<std::int64_t> jn_;
  std::int64_t q_ = 0;
};

void require_odd(std::int64_t k, const char* op) {
  if (k < 3 || k % 2 == 0) {
    throw std::invalid_argument(std::string(op) + ": modulus " + std::to_string(k) +
                                " must be odd and >= 3");
  }
}

double wrapped_angle_diff(GaussValue a, GaussValue b) {
  return std::abs(std::arg(a / b));
}

}  // namespace

std::int64_t term_count(std::int64_t k, std::size_t m, SumRange range) {
  const auto b = bounds(k, range);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (b.count != 0 && total > std::numeric_limits<std::int64_t>::max() / b.count) {
      return std::numeric_limits<std::int64_t>::max();
    }
    total *= b.count;
  }
  return total;
}

GaussValue multivariate_gauss_sum(const FramedLinkMatrix& j, std::int64_t k, PhaseScale scale,
                                  SumRange range, const SumOptions& options) {
  if (k < 2) throw std::invalid_argument("multivariate_gauss_sum: k must be >= 2");
  if (scale.den <= 0) throw std::invalid_argument("multivariate_gauss_sum: scale denominator must be positive");
  const auto b = bounds(k, range);
  const std::int64_t total = term_count(k, j.size(), range);
  if (total > options.guard) {
    throw GuardExceeded("brute-force sum needs " + std::to_string(b.count) + "^" +
                        std::to_string(j.size()) + " terms, above the guard of " +
                        std::to_string(options.guard));
  }
  if (total == 0) return {0.0, 0.0};

  std::vector<GaussValue> table;
  if (scale.den <= (1 << 20)) {
    table.resize(static_cast<std::size_t>(scale.den));
    for (std::int64_t r = 0; r < scale.den; ++r) {
      table[static_cast<std::size_t>(r)] =
          std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(scale.den));
    }
  }

  const std::int64_t nblocks = (total + detail::kSumBlock - 1) / detail::kSumBlock;
  std::vector<GaussValue> block_sums(static_cast<std::size_t>(nblocks));
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, nblocks));

  auto run = [&](unsigned w) {
    BlockEnumerator en(j, b, scale, table);
    for (std::int64_t blk = w; blk < nblocks; blk += workers) {
      const std::int64_t start = blk * detail::kSumBlock;
      block_sums[static_cast<std::size_t>(blk)] =
          en.sum(start, std::min(total, start + detail::kSumBlock));
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  return detail::pairwise_sum(block_sums);
}

// ---------------------------------------------------------------------------
// Invariants

InvariantResult tau_abelian(const FramedLinkMatrix& j, const ModK& ring, Method method,
                            const SumOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t k = ring.modulus();
  InvariantResult out;
  out.method = method;
  out.k = k;
  out.m = j.size();
  if (k % 4 != 1) {
    out.warnings.push_back("k = " + std::to_string(k) +
                           " is not 1 mod 4; the value is not expected to be a 3-manifold invariant");
  }
  if (method == Method::kBrute) {
    out.value = multivariate_gauss_sum(j, k, {-1, k}, SumRange::kZeroToKMinus1, options);
  } else {
    const auto diag = diagonalize_mod_k(j, ring);
    out.value = {1.0, 0.0};
    for (std::int64_t d : diag.d) out.value *= gauss_sum_brute(k, d);
  }
  out.normalized = out.value / std::pow(static_cast<double>(k), 0.5 * static_cast<double>(j.size()));
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

InvariantResult tau_su2_k3(const FramedLinkMatrix& j, const SumOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  InvariantResult out;
  out.method = Method::kBrute;
  out.k = 3;
  out.m = j.size();
  const GaussValue sum = multivariate_gauss_sum(j, 3, {1, 4}, SumRange::kOneToTwo, options);
  const int sigma = signature(j);
  const GaussValue prefactor =
      std::pow(2.0, -0.5 * static_cast<double>(j.size())) *
      std::polar(1.0, -kPi * static_cast<double>(sigma) / 4.0);
  out.value = prefactor * sum;
  out.normalized = out.value;
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

InvariantResult tau_dw(const FramedLinkMatrix& j, std::int64_t k, DwRange range,
                       const SumOptions& options) {
  if (k < 2) throw std::invalid_argument("tau_dw: k must be >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  InvariantResult out;
  out.method = Method::kBrute;
  out.k = k;
  out.m = j.size();
  const auto r = range == DwRange::kPaper ? SumRange::kOneToKMinus1 : SumRange::kZeroToKMinus1;
  out.value = multivariate_gauss_sum(j, k, {1, k}, r, options) / static_cast<double>(k);
  out.normalized = out.value;
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

GaussValue su2_k3_sublink_sum(const FramedLinkMatrix& j) {
  const std::size_t m = j.size();
  if (m > 26) throw GuardExceeded("sublink enumeration limited to 26 components");
  GaussValue acc{0.0, 0.0};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::int64_t total = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!(mask >> r & 1)) continue;
      for (std::size_t c = 0; c < m; ++c)
        if (mask >> c & 1) total += j(r, c);
    }
    acc += std::polar(1.0, kPi * static_cast<double>(reduce_mod(total, 4)) / 2.0);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Kirby moves

FramedLinkMatrix apply_move(const FramedLinkMatrix& j, const KirbyMove& move) {
  switch (move.type) {
    case KirbyMove::Type::kBlowUp: return blow_up(j, move.sign);
    case KirbyMove::Type::kBlowDown: return blow_down(j, move.i);
    case KirbyMove::Type::kHandleSlide: return handle_slide(j, move.i, move.over, move.sign);
  }
  throw std::invalid_argument("unknown Kirby move");
}

FramedLinkMatrix apply_moves(const FramedLinkMatrix& j, const std::vector<KirbyMove>& moves) {
  FramedLinkMatrix cur = j;
  for (std::size_t s = 0; s < moves.size(); ++s) {
    try {
      cur = apply_move(cur, moves[s]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("move " + std::to_string(s) + ": " + e.what());
    }
  }
  return cur;
}

std::vector<KirbyMove> random_move_script(const FramedLinkMatrix& j, std::size_t count,
                                          std::uint64_t seed, std::size_t max_components) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
  };
  std::vector<KirbyMove> script;
  FramedLinkMatrix cur = j;
  while (script.size() < count) {
    const std::size_t m = cur.size();
    std::vector<std::size_t> downs;
    for (std::size_t i = 0; i < m; ++i)
      if (can_blow_down(cur, i)) downs.push_back(i);

    std::vector<KirbyMove::Type> options;
    if (m < max_components) options.push_back(KirbyMove::Type::kBlowUp);
    if (!downs.empty()) options.push_back(KirbyMove::Type::kBlowDown);
    if (m >= 2) {
      options.push_back(KirbyMove::Type::kHandleSlide);
      options.push_back(KirbyMove::Type::kHandleSlide);
    }
    if (options.empty()) break;

    KirbyMove mv;
    mv.type = options[uniform(options.size())];
    switch (mv.type) {
      case KirbyMove::Type::kBlowUp: mv.sign = uniform(2) ? 1 : -1; break;
      case KirbyMove::Type::kBlowDown: mv.i = downs[uniform(downs.size())]; break;
      case KirbyMove::Type::kHandleSlide:
        mv.i = uniform(m);
        mv.over = (mv.i + 1 + uniform(m - 1)) % m;
        mv.sign = uniform(2) ? 1 : -1;
        break;
    }
    cur = apply_move(cur, mv);
    script.push_back(mv);
  }
  return script;
}

std::vector<KirbyMove> random_slide_script(const FramedLinkMatrix& j, std::size_t count,
                                           std::uint64_t seed) {
  std::vector<KirbyMove> script;
  const std::size_t m = j.size();
  if (m < 2) return script;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1), other(0, m - 2), coin(0, 1);
  for (std::size_t s = 0; s < count; ++s) {
    KirbyMove mv;
    mv.type = KirbyMove::Type::kHandleSlide;
    mv.i = pick(rng);
    mv.over = (mv.i + 1 + other(rng)) % m;
    mv.sign = coin(rng) ? 1 : -1;
    script.push_back(mv);
  }
  return script;
}

KirbyReport check_kirby_invariance(const FramedLinkMatrix& j, const std::vector<KirbyMove>& moves,
                                   const KirbyCheckConfig& config) {
  KirbyReport report;
  const FramedLinkMatrix after = apply_moves(j, moves);
  bool blow_moves = false;
  for (const auto& mv : moves) {
    switch (mv.type) {
      case KirbyMove::Type::kBlowUp: ++report.net_blow_ups; blow_moves = true; break;
      case KirbyMove::Type::kBlowDown: --report.net_blow_ups; blow_moves = true; break;
      case KirbyMove::Type::kHandleSlide: ++report.slides; break;
    }
  }

  switch (config.invariant) {
    case InvariantKind::kSu2K3: {
      report.before = tau_su2_k3(j, config.sum).value;
      report.after = tau_su2_k3(after, config.sum).value;
      report.deviation = std::abs(report.after - report.before);
      report.asserted = true;
      break;
    }
    case InvariantKind::kAbelian: {
      const ModK ring(config.k);
      report.before = tau_abelian(j, ring, Method::kBrute, config.sum).value;
      report.after = tau_abelian(after, ring, Method::kBrute, config.sum).value;
      const double expected_ratio =
          std::pow(std::sqrt(static_cast<double>(config.k)), report.net_blow_ups);
      const double ratio = std::abs(report.after) / std::abs(report.before);
      report.deviation = std::max(wrapped_angle_diff(report.after, report.before),
                                  std::abs(ratio - expected_ratio) / expected_ratio);
      report.asserted = config.k % 4 == 1 || !blow_moves;
      if (!report.asserted) {
        report.note = "k = 3 mod 4: blow-ups multiply by G(k, +-1) = -+i sqrt(k); recorded only";
      }
      break;
    }
    case InvariantKind::kDijkgraafWitten: {
      require_odd(config.k, "check_kirby_invariance");
      report.before = tau_dw(j, config.k, config.dw_range, config.sum).value;
      report.after = tau_dw(after, config.k, config.dw_range, config.sum).value;
      report.deviation = std::abs(report.after - report.before);
      report.asserted = config.dw_range == DwRange::kFull && !blow_moves;
      if (!report.asserted) {
        report.note = config.dw_range == DwRange::kPaper
                          ? "range 1..k-1 is not slide invariant; recorded only"
                          : "blow-up behaviour recorded only";
      }
      break;
    }
  }
  report.passed = report.deviation < config.tolerance;
  return report;
}

}  // namespace qtopo
