#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gendiv {

/// Random source used everywhere. A run owns exactly one evolution stream.
using Rng = std::mt19937_64;

inline std::size_t uniform_index(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool bernoulli(double p, Rng& rng) {
  return std::bernoulli_distribution(p)(rng);
}

/// Draws min(count, n) distinct indices from [0, n) by partial Fisher-Yates.
inline std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  const std::size_t k = count < n ? count : n;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(n - i, rng);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace gendiv
