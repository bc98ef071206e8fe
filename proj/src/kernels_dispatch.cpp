#include <cstdlib>
#include <string>

#include "heislab/kernels.hpp"

namespace heislab::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(HEISLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("HEISLAB_SIMD")) {
    if (std::string(forced) == "scalar") return Isa::Scalar;
  }
  return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active() noexcept {
  static const Isa isa = detect();
  return isa;
}

#if defined(HEISLAB_HAVE_AVX2)
#define HEISLAB_DISPATCH(fn, ...) \
  return active() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define HEISLAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  HEISLAB_DISPATCH(add_mod_row, a, b, out, p);
}

void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  HEISLAB_DISPATCH(mul_mod_row, a, b, out, p);
}

std::uint64_t sum_squares(std::span<const std::uint32_t> v) { HEISLAB_DISPATCH(sum_squares, v); }

std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi) {
  HEISLAB_DISPATCH(complex_dot, ar, ai, br, bi);
}

double norm_sq_sum(std::span<const double> re, std::span<const double> im) {
  HEISLAB_DISPATCH(norm_sq_sum, re, im);
}

#undef HEISLAB_DISPATCH

}  // namespace heislab::kernels
