#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heislab/complex_rational.hpp"
#include "heislab/ffield.hpp"
#include "heislab/heisenberg.hpp"
#include "heislab/lab/rng.hpp"

namespace heislab::lab {

enum class SetKind { Interval, Random, MultSubgroup, Geometric, Subspace, BoxBrick, GaussianGrid, Explicit };

std::string_view to_string(SetKind kind) noexcept;

/// A set family, written "kind:key=value,key=value" or "explicit:item|item".
///
///   interval       lo (default 1), hi or size
///   random         size, nonzero (default 1 for scalars, 0 for vectors)
///   mult_subgroup  d (or size)
///   geometric      g (default 2), size
///   subspace       dim, or subfield=1 for F_p^n inside F_q^n
///   box_brick      x, y, z per-coordinate sizes, or full=1
///   gaussian_grid  r (default 2), optional size for a random subset
///   explicit       items separated by '|'; vector coordinates by ','
class SetSpec {
 public:
  static SetSpec parse(const std::string& text);

  SetKind kind() const noexcept { return kind_; }
  /// Canonical text; parse(to_string()) round-trips.
  std::string to_string() const;

  bool has(const std::string& key) const { return params_.count(key) != 0; }
  std::uint64_t get(const std::string& key, std::uint64_t fallback) const;
  std::int64_t get_signed(const std::string& key, std::int64_t fallback) const;
  std::optional<std::string> raw(const std::string& key) const;
  const std::vector<std::string>& items() const noexcept { return items_; }

  /// Copy with the size parameter set (d for mult_subgroup).
  SetSpec with_size(std::uint64_t size) const;

 private:
  SetKind kind_ = SetKind::Random;
  std::map<std::string, std::string> params_;
  std::vector<std::string> items_;
};

/// Scalars of F_q, sorted. Throws InvalidSpec, NotADivisor, SizeUnsatisfiable.
std::vector<Elem> gen_scalars(const FieldCtx& ctx, const SetSpec& spec, Rng& rng);
/// Vectors of F_q^n, sorted.
std::vector<FieldVector> gen_vectors(const FieldCtx& ctx, unsigned n, const SetSpec& spec, Rng& rng);
/// Box brick from box_brick; any vector family gives the general brick [E, E, {0}].
Brick gen_brick(const FieldCtx& ctx, unsigned n, const SetSpec& spec, Rng& rng);
/// Exact complex scalars, sorted.
std::vector<ComplexRational> gen_complex(const SetSpec& spec, Rng& rng);

}  // namespace heislab::lab
