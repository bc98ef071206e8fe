#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, on x86-64 builds, an AVX2 variant. The active variant is
// chosen once at runtime from CPU features; HEISLAB_SIMD=scalar forces the
// reference path.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace heislab::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the variant was compiled in and the CPU supports it.
bool available(Isa isa) noexcept;

/// Variant used by the dispatching entry points below.
Isa active() noexcept;

/// Modular arithmetic over a prime p < 2^20; inputs must already be reduced.
///   out[i] = (a + b[i]) mod p
void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);
///   out[i] = (a * b[i]) mod p
void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);

/// Sum of squares of 32-bit histogram counts.
std::uint64_t sum_squares(std::span<const std::uint32_t> v);

/// Sum_i (ar[i] + i ai[i]) * (br[i] + i bi[i]); arrays in split re/im layout.
std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi);

/// Sum_i re[i]^2 + im[i]^2.
double norm_sq_sum(std::span<const double> re, std::span<const double> im);

// Explicit variants, used by the equivalence tests and the dispatcher.
namespace scalar {
void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);
void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);
std::uint64_t sum_squares(std::span<const std::uint32_t> v);
std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi);
double norm_sq_sum(std::span<const double> re, std::span<const double> im);
}  // namespace scalar

#if defined(HEISLAB_HAVE_AVX2)
namespace avx2 {
void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);
void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p);
std::uint64_t sum_squares(std::span<const std::uint32_t> v);
std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi);
double norm_sq_sum(std::span<const double> re, std::span<const double> im);
}  // namespace avx2
#endif

}  // namespace heislab::kernels
