#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace heislab {

using BigInt = mpz_class;
using BigRat = mpq_class;
using Count = std::uint64_t;

inline BigInt big(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

inline BigInt big128(unsigned __int128 v) {
  BigInt r = big(static_cast<std::uint64_t>(v >> 64));
  r <<= 64;
  r += big(static_cast<std::uint64_t>(v));
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

std::size_t hash_mpz(const BigInt& v) noexcept;

/// Exact integer power with a big result.
inline BigInt big_pow(std::uint64_t base, unsigned long exp) {
  BigInt r;
  BigInt b = big(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

/// Nearest double of an integer, rational or pending GMP expression.
template <class T, class U>
double to_double(const __gmp_expr<T, U>& v) {
  return __gmp_expr<T, T>(v).get_d();
}

}  // namespace heislab
