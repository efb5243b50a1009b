#pragma once

#include <complex>
#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace qtopo::detail {

inline constexpr std::int64_t kSumBlock = 4096;

// Pairwise (tree) summation. The result depends only on the order of the
// input, never on how it was produced.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  if (xs.size() <= 8) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& x : xs) acc += x;
    return acc;
  }
  const auto half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Sums term(0) .. term(count - 1): straight accumulation inside fixed-size
// blocks, pairwise across blocks.
template <typename Term>
std::complex<double> blocked_sum(std::int64_t count, Term&& term) {
  std::vector<std::complex<double>> blocks;
  blocks.reserve(static_cast<std::size_t>((count + kSumBlock - 1) / kSumBlock));
  for (std::int64_t start = 0; start < count; start += kSumBlock) {
    const std::int64_t stop = std::min(count, start + kSumBlock);
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t i = start; i < stop; ++i) acc += term(i);
    blocks.push_back(acc);
  }
  return pairwise_sum(blocks);
}

}  // namespace qtopo::detail
