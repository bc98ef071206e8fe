#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace heislab::lab {

/// Written into every output header so other implementations can reproduce
/// a sweep: engine std::mt19937_64, bounded draws by rejection of the top
/// remainder (x mod n after discarding x >= 2^64 - (2^64 mod n)), k-of-n
/// samples by Floyd's algorithm, per-cell seeds by splitmix64 chaining.
inline constexpr std::string_view kRngContract = "mt19937_64+rejection+floyd+splitmix64-cells";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t cutoff = -n % n;  // 2^64 mod n
    while (true) {
      const std::uint64_t x = engine_();
      if (x >= cutoff) return x % n;
    }
  }

  /// k distinct values of [0, n), ascending. Requires k <= n.
  std::vector<std::uint64_t> sample(std::uint64_t n, std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

/// Seed for one sweep cell, independent of execution order.
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t q, std::uint64_t size, std::uint64_t trial) noexcept;

}  // namespace heislab::lab
