#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gendiv/rng.hpp"

namespace gendiv {

/// Fitness-neutral bit-vector marker attached to every individual.
///
/// Bits are packed into 64-bit words; bits past `tau` in the last word are
/// always zero so word-wise popcounts stay exact. The length is fixed at
/// construction.
class TrashVector {
 public:
  static constexpr std::size_t kDefaultTau = 32;

  /// All-zero vector of length `tau`. Throws InvalidParameter for tau == 0.
  explicit TrashVector(std::size_t tau = kDefaultTau);

  /// Adopts packed words (bit i lives in word i/64). Bits past tau are cleared.
  static TrashVector from_words(std::size_t tau, std::vector<std::uint64_t> words);

  std::size_t tau() const noexcept { return tau_; }
  bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value) noexcept;
  void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  std::size_t popcount() const noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const TrashVector&, const TrashVector&) = default;

 private:
  std::size_t tau_;
  std::vector<std::uint64_t> words_;
};

TrashVector random_trash(std::size_t tau, Rng& rng);

/// Copy of `v` with exactly one uniformly chosen bit inverted.
TrashVector flip_one_bit(const TrashVector& v, Rng& rng);

/// Each output bit is taken from `a` or `b` with probability 1/2.
TrashVector uniform_cross(const TrashVector& a, const TrashVector& b, Rng& rng);

/// Raw Hamming distance; lengths must match.
std::size_t hamming(const TrashVector& a, const TrashVector& b);

/// Hamming distance divided by tau, in [0, 1].
double tdist(const TrashVector& a, const TrashVector& b);

}  // namespace gendiv
