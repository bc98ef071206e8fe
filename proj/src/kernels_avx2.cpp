// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "heislab/kernels.hpp"

#include <immintrin.h>

#include <cassert>

namespace heislab::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void add_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  assert(out.size() >= b.size());
  const std::size_t n = b.size();
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    __m256i s = _mm256_add_epi32(va, vb);
    // s < 2p < 2^32: when s < p the subtraction wraps high and min keeps s.
    __m256i r = _mm256_min_epu32(s, _mm256_sub_epi32(s, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), r);
  }
  for (; i < n; ++i) {
    std::uint32_t s = a + b[i];
    out[i] = s >= p ? s - p : s;
  }
}

void mul_mod_row(std::uint32_t a, std::span<const std::uint32_t> b, std::span<std::uint32_t> out,
                 std::uint32_t p) {
  assert(out.size() >= b.size());
  const std::size_t n = b.size();
  // Operands are < 2^20, so products (< 2^40) and quotient corrections are
  // exact in double precision.
  const __m256d va = _mm256_set1_pd(static_cast<double>(a));
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128i vb32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b.data() + i));
    __m256d prod = _mm256_mul_pd(va, _mm256_cvtepi32_pd(vb32));
    __m256d quot = _mm256_floor_pd(_mm256_mul_pd(prod, vinv));
    __m256d r = _mm256_fnmadd_pd(quot, vp, prod);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out.data() + i), _mm256_cvttpd_epi32(r));
  }
  for (; i < n; ++i) out[i] = static_cast<std::uint32_t>(std::uint64_t{a} * b[i] % p);
}

std::uint64_t sum_squares(std::span<const std::uint32_t> v) {
  const std::size_t n = v.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + i));
    __m256i even = _mm256_mul_epu32(x, x);
    __m256i odd_src = _mm256_srli_epi64(x, 32);
    __m256i odd = _mm256_mul_epu32(odd_src, odd_src);
    acc = _mm256_add_epi64(acc, _mm256_add_epi64(even, odd));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += std::uint64_t{v[i]} * v[i];
  return total;
}

std::complex<double> complex_dot(std::span<const double> ar, std::span<const double> ai,
                                 std::span<const double> br, std::span<const double> bi) {
  const std::size_t n = ar.size();
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xr = _mm256_loadu_pd(ar.data() + i);
    __m256d xi = _mm256_loadu_pd(ai.data() + i);
    __m256d yr = _mm256_loadu_pd(br.data() + i);
    __m256d yi = _mm256_loadu_pd(bi.data() + i);
    re = _mm256_fmadd_pd(xr, yr, re);
    re = _mm256_fnmadd_pd(xi, yi, re);
    im = _mm256_fmadd_pd(xr, yi, im);
    im = _mm256_fmadd_pd(xi, yr, im);
  }
  double sre = hsum(re), sim = hsum(im);
  for (; i < n; ++i) {
    sre += ar[i] * br[i] - ai[i] * bi[i];
    sim += ar[i] * bi[i] + ai[i] * br[i];
  }
  return {sre, sim};
}

double norm_sq_sum(std::span<const double> re, std::span<const double> im) {
  const std::size_t n = re.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_loadu_pd(re.data() + i);
    __m256d m = _mm256_loadu_pd(im.data() + i);
    acc = _mm256_fmadd_pd(r, r, acc);
    acc = _mm256_fmadd_pd(m, m, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += re[i] * re[i] + im[i] * im[i];
  return total;
}

}  // namespace heislab::kernels::avx2
