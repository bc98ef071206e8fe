#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heislab {

/// Element of F_q stored as the integer sum c_i p^i of its little-endian
/// coefficient vector (c_0, ..., c_{k-1}). Ordering by this index is
/// lexicographic on the big-endian coefficient tuple.
struct Elem {
  std::uint32_t v = 0;

  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

struct ElemHash {
  std::size_t operator()(Elem e) const noexcept { return std::hash<std::uint32_t>{}(e.v); }
};

using FieldVector = std::vector<Elem>;

/// Deterministic primality test for 64-bit integers.
bool is_prime(std::uint64_t n) noexcept;

/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Immutable finite field F_{p^k}. Copies share the precomputed tables.
class FieldCtx {
 public:
  /// Builds F_{p^k}. With no modulus and k > 1 the lexicographically smallest
  /// monic irreducible polynomial is used. `modulus` lists coefficients
  /// c_0..c_k little-endian; c_k must be 1.
  static FieldCtx make(std::uint64_t p, unsigned k = 1,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Field of order q, which must be a prime power.
  static FieldCtx of_order(std::uint64_t q);

  std::uint32_t p() const noexcept { return impl_->p; }
  unsigned k() const noexcept { return impl_->k; }
  std::uint32_t q() const noexcept { return impl_->q; }
  bool is_prime_field() const noexcept { return impl_->k == 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return impl_->modulus; }
  /// A generator of the multiplicative group.
  Elem generator() const noexcept { return impl_->generator; }

  Elem zero() const noexcept { return {0}; }
  Elem one() const noexcept { return {1}; }
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(std::int64_t n) const noexcept;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;
  bool valid(Elem a) const noexcept { return a.v < impl_->q; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// Square-and-multiply; negative exponents require a != 0.
  Elem pow(Elem a, std::int64_t e) const;

  /// Schoolbook polynomial product reduced by the modulus; independent of
  /// the log tables that back mul().
  Elem mul_poly(Elem a, Elem b) const;

  /// Tr(a) = sum_{i<k} a^{p^i}, an element of the prime subfield.
  std::uint32_t trace(Elem a) const noexcept;
  /// chi(a) = exp(2 pi i Tr(a) / p).
  std::complex<double> chi(Elem a) const noexcept;

  /// out[i] = a + b[i] and out[i] = a * b[i]; SIMD-backed for prime fields.
  void add_row(Elem a, std::span<const Elem> b, std::span<Elem> out) const;
  void mul_row(Elem a, std::span<const Elem> b, std::span<Elem> out) const;

  /// All elements in canonical order.
  std::vector<Elem> elements() const;

  /// The subgroup of F_q^* of order d, sorted. Throws NotADivisor.
  std::vector<Elem> mult_subgroup(std::uint64_t d) const;

  /// Coefficient tuple "(c0;c1;...)" for k > 1, plain integer for k = 1.
  std::string format(Elem a) const;
  /// Inverse of format(). Plain integers are also accepted and reduced mod p.
  Elem parse(const std::string& text) const;

  std::string describe() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept {
    return a.impl_ == b.impl_ || (a.p() == b.p() && a.k() == b.k() && a.modulus() == b.modulus());
  }

 private:
  struct Impl {
    std::uint32_t p = 0;
    unsigned k = 1;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> pow_p;      // p^i, i <= k
    std::vector<std::uint32_t> exp_table;  // g^i, k > 1 only
    std::vector<std::uint32_t> log_table;  // k > 1 only
    std::vector<std::uint32_t> trace_basis;  // Tr(t^i)
    Elem generator;
  };

  explicit FieldCtx(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Validates a monic polynomial (little-endian) for irreducibility over F_p by
/// trial division with every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// Lexicographically smallest monic irreducible polynomial of degree k.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, unsigned k);

/// Dot product over F_q; throws DimensionMismatch on length mismatch.
Elem dot(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y);
FieldVector vec_add(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y);
FieldVector vec_sub(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y);
FieldVector vec_neg(const FieldCtx& ctx, std::span<const Elem> x);
FieldVector vec_scale(const FieldCtx& ctx, Elem s, std::span<const Elem> x);

/// Bijection F_q^n <-> [0, q^n), first coordinate most significant, so the
/// index order is lexicographic.
class VectorCodec {
 public:
  /// Throws LimitExceeded if q^n exceeds the vector-space limit.
  VectorCodec(const FieldCtx& ctx, unsigned n);

  unsigned dim() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  /// Bits needed to store any index.
  unsigned bits() const noexcept { return bits_; }

  std::uint64_t encode(std::span<const Elem> x) const;
  FieldVector decode(std::uint64_t index) const;
  void decode_into(std::uint64_t index, std::span<Elem> out) const;

 private:
  std::uint32_t q_;
  unsigned n_;
  std::uint64_t size_;
  unsigned bits_;
};

/// Every vector of F_q^n in lexicographic order. Throws LimitExceeded.
std::vector<FieldVector> enumerate_space(const FieldCtx& ctx, unsigned n);

std::string format_vector(const FieldCtx& ctx, std::span<const Elem> x);

}  // namespace heislab
