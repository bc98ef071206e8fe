#include "heislab/kernels.hpp"

#include <cassert>

namespace heislab::kernels::scalar {

void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  assert(out.size() >= b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::uint32_t s = a + b[i];
    out[i] = s >= p ? s - p : s;
  }
}

void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  assert(out.size() >= b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] = static_cast<std::uint32_t>(std::uint64_t{a} * b[i] % p);
}

std::uint64_t sum_squares(std::span<const std::uint32_t> v) {
  std::uint64_t acc = 0;
  for (std::uint32_t x : v) acc += std::uint64_t{x} * x;
  return acc;
}

std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < ar.size(); ++i) {
    re += ar[i] * br[i] - ai[i] * bi[i];
    im += ar[i] * bi[i] + ai[i] * br[i];
  }
  return {re, im};
}

double norm_sq_sum(std::span<const double> re, std::span<const double> im) {
  double acc = 0;
  for (std::size_t i = 0; i < re.size(); ++i) acc += re[i] * re[i] + im[i] * im[i];
  return acc;
}

}  // namespace heislab::kernels::scalar
