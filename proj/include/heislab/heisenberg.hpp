#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/ffield.hpp"

namespace heislab {

/// Element [x, y, z] of H_n(F_q).
struct HeisPoint {
  FieldVector x;
  FieldVector y;
  Elem z;

  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;
};

HeisPoint heis_identity(unsigned n);

/// [x,y,z][x',y',z'] = [x+x', y+y', z+z'+x.y']
HeisPoint heis_mul(const FieldCtx& ctx, const HeisPoint& a, const HeisPoint& b);
HeisPoint heis_inv(const FieldCtx& ctx, const HeisPoint& a);

/// "x1,..,xn|y1,..,yn|z" with elements printed by FieldCtx::format.
std::string format_point(const FieldCtx& ctx, const HeisPoint& a);
HeisPoint parse_point(const FieldCtx& ctx, const std::string& text);

/// Packs [x, y, z] into 64 bits as (x index, y index, z), z in the low bits.
class HeisCodec {
 public:
  HeisCodec(const FieldCtx& ctx, unsigned n);

  unsigned dim() const noexcept { return vec_.dim(); }
  const VectorCodec& vectors() const noexcept { return vec_; }
  unsigned z_bits() const noexcept { return z_bits_; }
  std::uint32_t field_order() const noexcept { return q_; }

  std::uint64_t pack(std::uint64_t xi, std::uint64_t yi, Elem z) const noexcept {
    return (((xi << vec_.bits()) | yi) << z_bits_) | z.v;
  }
  std::uint64_t encode(const HeisPoint& a) const;
  HeisPoint decode(std::uint64_t key) const;
  /// Key with the z field stripped, identifying the center coset.
  std::uint64_t coset_of(std::uint64_t key) const noexcept { return key >> z_bits_; }

 private:
  VectorCodec vec_;
  std::uint32_t q_;
  unsigned z_bits_;
};

/// A brick [E, F, A]. Box bricks store the per-coordinate factors of E and F.
class Brick {
 public:
  enum class Kind { Box, General };

  /// E = X_1 x ... x X_n, F = Y_1 x ... x Y_n.
  static Brick box(const FieldCtx& ctx, std::vector<std::vector<Elem>> xs,
                   std::vector<std::vector<Elem>> ys, std::vector<Elem> zs);
  static Brick general(const FieldCtx& ctx, unsigned n, std::vector<FieldVector> e,
                       std::vector<FieldVector> f, std::vector<Elem> a);
  /// [F_q^n, F_q^n, F_q]
  static Brick full(const FieldCtx& ctx, unsigned n);

  Kind kind() const noexcept { return kind_; }
  const FieldCtx& field() const noexcept { return ctx_; }
  unsigned dim() const noexcept { return n_; }

  /// Deduplicated, sorted vectors of the E and F parts.
  const std::vector<FieldVector>& e_part() const noexcept { return e_; }
  const std::vector<FieldVector>& f_part() const noexcept { return f_; }
  const std::vector<Elem>& a_part() const noexcept { return a_; }

  /// |E| |F| |A|
  std::uint64_t size() const noexcept;

  /// max_i |X_i| and max_i |Y_i|; box bricks only.
  std::optional<std::uint64_t> x_max() const noexcept;
  std::optional<std::uint64_t> y_max() const noexcept;
  const std::vector<std::vector<Elem>>& x_factors() const noexcept { return xs_; }
  const std::vector<std::vector<Elem>>& y_factors() const noexcept { return ys_; }

  std::vector<HeisPoint> points() const;

 private:
  Brick(FieldCtx ctx, unsigned n) : ctx_(std::move(ctx)), n_(n) {}

  FieldCtx ctx_;
  unsigned n_;
  Kind kind_ = Kind::General;
  std::vector<std::vector<Elem>> xs_, ys_;
  std::vector<FieldVector> e_, f_;
  std::vector<Elem> a_;
};

/// Distinct products with their representation counts r(g).
struct ProductSet {
  HeisCodec codec;
  std::vector<std::uint64_t> keys;    // sorted
  std::vector<std::uint64_t> counts;  // r(g), parallel to keys
  BigInt pairs;                       // |B1| |B2|
  BigInt collision_energy;            // sum_g r(g)^2

  std::uint64_t size() const noexcept { return keys.size(); }
  bool contains(const HeisPoint& g) const;
  std::uint64_t representations(const HeisPoint& g) const;
  std::vector<HeisPoint> points() const;
};

/// B1 B2 as an exact set. `workers` > 1 partitions the pair loop; the result
/// does not depend on the partition. Throws LimitExceeded above the pair limit.
ProductSet product_set(const Brick& b1, const Brick& b2, unsigned workers = 1);
ProductSet product_set(const FieldCtx& ctx, std::span<const HeisPoint> s1,
                       std::span<const HeisPoint> s2);

/// Number of full center cosets {[x, y, z] : z in F_q} contained in the set.
std::uint64_t coset_count(const ProductSet& s);
std::uint64_t coset_count(const FieldCtx& ctx, std::span<const HeisPoint> s);

struct ShkredovCheck {
  double lhs = 0;  // X Y
  double rhs = 0;  // p^{3/2} (X Y / (p |Z|^{1/2}))^{2^{-n/2}}
  bool main_inequality = false;
  bool z_le_xy = false;  // |Z| <= X Y
  bool x_le_zy = false;  // X <= |Z| Y
  bool y_le_zx = false;  // Y <= |Z| X
  bool holds = false;
};

/// Evaluates the growth hypothesis for a box brick with the implied constant
/// set to 1. Throws OddDimension for odd n and InvalidSpec for general bricks.
ShkredovCheck shkredov_condition(const Brick& b, std::uint64_t p);

}  // namespace heislab
