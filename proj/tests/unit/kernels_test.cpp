#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "heislab/kernels.hpp"

using namespace heislab;

namespace {

struct ModCase {
  std::uint32_t p;
  std::size_t len;
};

const std::vector<ModCase> kModCases = {{2, 0},  {2, 1},   {3, 7},        {5, 8},         {7, 9},
                                        {251, 31}, {65521, 64}, {(1u << 20) - 3, 65}, {1048573, 100}};

std::vector<std::uint32_t> reduced(std::mt19937_64& g, std::uint32_t p, std::size_t len) {
  std::vector<std::uint32_t> v(len);
  for (auto& x : v) x = static_cast<std::uint32_t>(g() % p);
  if (len) v[0] = p - 1;
  return v;
}

std::vector<double> doubles(std::mt19937_64& g, std::size_t len) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(len);
  for (auto& x : v) x = u(g);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match the definitions") {
  std::mt19937_64 g(1);
  for (auto [p, len] : kModCases) {
    const auto b = reduced(g, p, len);
    std::vector<std::uint32_t> out(len);
    for (std::uint32_t a : {0u, 1u, p - 1, static_cast<std::uint32_t>(g() % p)}) {
      kernels::scalar::add_mod_row(a, b, out, p);
      for (std::size_t i = 0; i < len; ++i) REQUIRE(out[i] == (a + b[i]) % p);
      kernels::scalar::mul_mod_row(a, b, out, p);
      for (std::size_t i = 0; i < len; ++i) REQUIRE(out[i] == std::uint64_t{a} * b[i] % p);
    }
  }
  const std::vector<std::uint32_t> h = {1, 2, 3, 0xFFFFFFFFu};
  CHECK(kernels::scalar::sum_squares(h) == 14 + std::uint64_t{0xFFFFFFFFu} * 0xFFFFFFFFu);
}

TEST_CASE("dispatcher reports a usable variant") {
  CHECK(kernels::available(kernels::Isa::Scalar));
  CHECK(kernels::available(kernels::active()));
  const char* forced = std::getenv("HEISLAB_SIMD");
  if (forced && std::string(forced) == "scalar") CHECK(kernels::active() == kernels::Isa::Scalar);
}

#if defined(HEISLAB_HAVE_AVX2)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!kernels::available(kernels::Isa::Avx2)) {
    MESSAGE("CPU lacks AVX2; equivalence not exercised");
    return;
  }
  std::mt19937_64 g(7);
  for (auto [p, len] : kModCases) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto b = reduced(g, p, len);
      const auto a = static_cast<std::uint32_t>(rep == 0 ? p - 1 : g() % p);
      std::vector<std::uint32_t> s(len), v(len);
      kernels::scalar::add_mod_row(a, b, s, p);
      kernels::avx2::add_mod_row(a, b, v, p);
      REQUIRE(s == v);
      kernels::scalar::mul_mod_row(a, b, s, p);
      kernels::avx2::mul_mod_row(a, b, v, p);
      REQUIRE(s == v);
    }
  }
  for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 1000u, 4099u}) {
    std::vector<std::uint32_t> h(len);
    for (auto& x : h) x = static_cast<std::uint32_t>(g());
    CHECK(kernels::scalar::sum_squares(h) == kernels::avx2::sum_squares(h));

    const auto ar = doubles(g, len), ai = doubles(g, len), br = doubles(g, len), bi = doubles(g, len);
    const auto cs = kernels::scalar::complex_dot(ar, ai, br, bi);
    const auto cv = kernels::avx2::complex_dot(ar, ai, br, bi);
    CHECK(std::abs(cs - cv) <= 1e-12 * (1.0 + static_cast<double>(len)));
    const double ns = kernels::scalar::norm_sq_sum(ar, ai), nv = kernels::avx2::norm_sq_sum(ar, ai);
    CHECK(std::abs(ns - nv) <= 1e-12 * (1.0 + ns));
  }
}
#endif
