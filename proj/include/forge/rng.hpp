#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace forge {

/// Seeded generator whose draws are identical on every platform. The
/// standard distributions are implementation-defined, so bounded draws use
/// rejection sampling on the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// k distinct values from [0, n), in draw order.
  std::vector<std::uint64_t> distinct(std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (std::uint64_t i = 0; i < k; ++i) {
      std::uint64_t j = i + below(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace forge
