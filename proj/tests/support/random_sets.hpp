#pragma once

// Seeded random instances for the test binaries.

#include <cstdint>
#include <vector>

#include "heislab/complex_rational.hpp"
#include "heislab/ffield.hpp"
#include "heislab/heisenberg.hpp"
#include "heislab/lab/rng.hpp"

namespace heislab::testing {

using lab::Rng;

inline Elem random_elem(const FieldCtx& ctx, Rng& rng) { return Elem{static_cast<std::uint32_t>(rng.below(ctx.q()))}; }

inline std::vector<Elem> random_scalars(const FieldCtx& ctx, Rng& rng, std::uint64_t size, bool nonzero = true) {
  const std::uint64_t lo = nonzero ? 1 : 0;
  std::vector<Elem> out;
  for (auto v : rng.sample(ctx.q() - lo, size)) out.push_back(Elem{static_cast<std::uint32_t>(v + lo)});
  return out;
}

inline std::vector<FieldVector> random_vectors(const FieldCtx& ctx, unsigned n, Rng& rng, std::uint64_t size) {
  const VectorCodec codec(ctx, n);
  std::vector<FieldVector> out;
  for (auto i : rng.sample(codec.size(), size)) out.push_back(codec.decode(i));
  return out;
}

inline HeisPoint random_point(const FieldCtx& ctx, unsigned n, Rng& rng) {
  HeisPoint g{FieldVector(n), FieldVector(n), random_elem(ctx, rng)};
  for (unsigned i = 0; i < n; ++i) {
    g.x[i] = random_elem(ctx, rng);
    g.y[i] = random_elem(ctx, rng);
  }
  return g;
}

/// Nonzero a/2 + (b/2) i with |a|, |b| <= r.
inline std::vector<ComplexRational> random_gaussian(Rng& rng, std::uint64_t size, long r = 2) {
  std::vector<ComplexRational> grid;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      if (a || b) grid.emplace_back(BigRat(a, 2), BigRat(b, 2));
  std::vector<ComplexRational> out;
  for (auto i : rng.sample(grid.size(), size)) out.push_back(grid[i]);
  return out;
}

inline std::vector<Elem> elems(std::initializer_list<std::uint32_t> v) {
  std::vector<Elem> out;
  for (auto x : v) out.push_back(Elem{x});
  return out;
}

}  // namespace heislab::testing
