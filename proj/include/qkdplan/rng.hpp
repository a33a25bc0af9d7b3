#ifndef QKDPLAN_RNG_HPP
#define QKDPLAN_RNG_HPP

#include <cstdint>
#include <random>

namespace qkdplan {

// Unbiased draw from [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined, so seeded runs would not be reproducible across
// standard libraries; this is.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

template <typename T>
void shuffle_prefix(std::vector<T>& items, std::size_t prefix, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < prefix && i + 1 < items.size(); ++i) {
    std::size_t j = i + uniform_below(rng, items.size() - i);
    std::swap(items[i], items[j]);
  }
}

}  // namespace qkdplan

#endif
