#include "gendiv/trash_genes.hpp"

#include <bit>
#include <string>
#include <utility>

#include "gendiv/errors.hpp"

namespace gendiv {
namespace {

std::uint64_t tail_mask(std::size_t tau) {
  const std::size_t rem = tau % 64;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

void require_same_length(const TrashVector& a, const TrashVector& b) {
  if (a.tau() != b.tau()) {
    throw InvalidParameter("trash vector length mismatch: " + std::to_string(a.tau()) +
                           " vs " + std::to_string(b.tau()));
  }
}

}  // namespace

TrashVector::TrashVector(std::size_t tau) : tau_(tau), words_((tau + 63) / 64, 0) {
  if (tau == 0) throw InvalidParameter("trash vector length tau must be >= 1");
}

TrashVector TrashVector::from_words(std::size_t tau, std::vector<std::uint64_t> words) {
  TrashVector v(tau);
  if (words.size() != v.words_.size()) {
    throw InvalidParameter("expected " + std::to_string(v.words_.size()) + " words for tau " +
                           std::to_string(tau));
  }
  words.back() &= tail_mask(tau);
  v.words_ = std::move(words);
  return v;
}

void TrashVector::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

std::size_t TrashVector::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

TrashVector random_trash(std::size_t tau, Rng& rng) {
  if (tau == 0) throw InvalidParameter("trash vector length tau must be >= 1");
  std::vector<std::uint64_t> words((tau + 63) / 64);
  for (auto& w : words) w = rng();
  return TrashVector::from_words(tau, std::move(words));
}

TrashVector flip_one_bit(const TrashVector& v, Rng& rng) {
  TrashVector out = v;
  out.flip(uniform_index(v.tau(), rng));
  return out;
}

TrashVector uniform_cross(const TrashVector& a, const TrashVector& b, Rng& rng) {
  require_same_length(a, b);
  std::vector<std::uint64_t> words(a.words().size());
  // A random word acts as the per-bit mask: set bits come from a, clear bits from b.
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t mask = rng();
    words[w] = (a.words()[w] & mask) | (b.words()[w] & ~mask);
  }
  return TrashVector::from_words(a.tau(), std::move(words));
}

std::size_t hamming(const TrashVector& a, const TrashVector& b) {
  require_same_length(a, b);
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(a.words()[w] ^ b.words()[w]));
  }
  return d;
}

double tdist(const TrashVector& a, const TrashVector& b) {
  return static_cast<double>(hamming(a, b)) / static_cast<double>(a.tau());
}

}  // namespace gendiv
