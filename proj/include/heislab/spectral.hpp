#pragma once

#include <complex>
#include <map>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/ffield.hpp"

namespace heislab {

/// A function F_q^n -> C stored densely in VectorCodec index order.
class DensityTable {
 public:
  DensityTable(FieldCtx ctx, unsigned n);

  /// Indicator of a vector set (duplicates ignored).
  static DensityTable indicator(const FieldCtx& ctx, unsigned n, std::span<const FieldVector> set);
  static DensityTable constant(const FieldCtx& ctx, unsigned n, std::complex<double> value);

  const FieldCtx& field() const noexcept { return ctx_; }
  unsigned dim() const noexcept { return codec_.dim(); }
  const VectorCodec& codec() const noexcept { return codec_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::complex<double>& operator[](std::uint64_t i) { return values_[i]; }
  const std::complex<double>& operator[](std::uint64_t i) const { return values_[i]; }
  std::complex<double> at(std::span<const Elem> x) const { return values_[codec_.encode(x)]; }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }

  /// sum_x |f(x)|^2
  double squared_norm() const;

 private:
  FieldCtx ctx_;
  VectorCodec codec_;
  std::vector<std::complex<double>> values_;
};

/// f^(m) = q^{-n} sum_x chi(-x.m) f(x), naive O(q^{2n}).
DensityTable fourier_transform(const DensityTable& f);
/// f(x) = sum_m chi(x.m) f^(m).
DensityTable inverse_fourier_transform(const DensityTable& fhat);

/// T = #{(v, x, x') in E^3 : v.(x - x') = 0}. Picks the cubic loop for tiny
/// sets and the per-v dot-product histogram otherwise, and checks
/// q T <= |E|^3 + q^{n+1} |E| before returning.
BigInt triple_count_direct(const FieldCtx& ctx, std::span<const FieldVector> e);
BigInt triple_count_cubic(const FieldCtx& ctx, std::span<const FieldVector> e);
BigInt triple_count_histogram(const FieldCtx& ctx, std::span<const FieldVector> e);

/// |E|^3/q + q^{2n-1} sum_{s != 0} sum_{v in E} |E^(s v)|^2, in floating point.
double triple_count_spectral(const FieldCtx& ctx, std::span<const FieldVector> e);

/// Multiset of points (a, b) in F_q^{2n} x F_q.
class LiftedMultiset {
 public:
  LiftedMultiset(FieldCtx ctx, unsigned n);

  void add(std::span<const Elem> a, Elem b, std::uint64_t multiplicity = 1);

  const FieldCtx& field() const noexcept { return ctx_; }
  unsigned dim() const noexcept { return n_; }

  /// (key, multiplicity) sorted by key; key = index(a) * q + b.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;
  std::size_t support_size() const noexcept { return counts_.size(); }
  std::pair<FieldVector, Elem> decode(std::uint64_t key) const;

  /// |A| = sum of multiplicities.
  BigInt total() const;
  /// sum of squared multiplicities.
  BigInt second_moment() const;

 private:
  FieldCtx ctx_;
  unsigned n_;
  std::uint64_t points_ = 0;  // q^{2n+1}
  std::map<std::uint64_t, std::uint64_t> counts_;
};

struct BilinearCount {
  BigInt count;             // N(A, B)
  BigRat main_term;         // |A| |B| / q
  double error_bound = 0;   // q^n (sum m_A^2 sum m_B^2)^{1/2}
  BigInt second_moment_a;
  BigInt second_moment_b;
};

/// N(A, B) = #{((a,b),(c,d)) in A x B : a.c = b + d}, with multiplicity.
/// Verifies |N - |A||B|/q| <= q^n (sum m_A^2 sum m_B^2)^{1/2} exactly.
BilinearCount bilinear_count_N(const LiftedMultiset& a, const LiftedMultiset& b);

struct LiftedPair {
  LiftedMultiset a;  // {(d, -b, d.c) : b, c, d in E}
  LiftedMultiset b;  // {(c', a', -a'.b') : a', b', c' in E}
};

LiftedPair lift_vector_system(const FieldCtx& ctx, std::span<const FieldVector> e);

}  // namespace heislab
