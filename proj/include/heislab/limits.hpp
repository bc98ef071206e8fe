#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace heislab {

/// Enumeration ceilings shared by every module.
///
/// Defaults keep exhaustive loops at desk scale. The HEISLAB_LIMIT
/// environment variable overrides them: either a bare integer (taken as the
/// pair-visit ceiling) or a comma list such as "field=1048576,space=4194304,pairs=1e9".
struct Limits {
  std::uint64_t field_order = std::uint64_t{1} << 20;   // q
  std::uint64_t vector_space = std::uint64_t{1} << 22;  // q^n
  std::uint64_t pair_visits = 1'000'000'000;            // inner-loop visits

  static Limits parse(const std::string& text);
  static Limits from_env();
};

/// Process-wide limits, initialized from the environment on first use.
const Limits& limits();

/// Replaces the process-wide limits for the lifetime of the guard.
/// Not thread-safe; intended for tests and CLI setup.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& next);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

/// Throws LimitExceeded when `visits` exceeds the pair ceiling.
void check_pairs(std::uint64_t visits, const char* what);

/// Saturating product, used when sizing loops before running them.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t sat_pow(std::uint64_t base, unsigned exp) noexcept;

}  // namespace heislab
