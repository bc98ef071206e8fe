#include "heislab/energy.hpp"

namespace heislab {

BigInt quad_count_S_vectors(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_sorted_set(e_in);
  const std::size_t m = e.size();
  if (m == 0) return 0;
  const unsigned n = static_cast<unsigned>(e.front().size());
  for (const auto& v : e) require(v.size() == n, ErrorKind::DimensionMismatch, "vectors of mixed dimension");
  check_pairs(sat_pow(m, 4), "quad_count_S_vectors");

  const VectorCodec codec(ctx, n);
  std::vector<std::uint64_t> sum(m * m);
  std::vector<std::uint32_t> prod(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      sum[i * m + j] = codec.encode(vec_add(ctx, e[i], e[j]));
      prod[i * m + j] = dot(ctx, e[i], e[j]).v;
    }

  // Group the pairs (a, c) by a + c.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> by_sum;
  by_sum.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) by_sum.emplace_back(sum[i * m + j], static_cast<std::uint32_t>(i));
  std::sort(by_sum.begin(), by_sum.end());

  // Key (index(b + d), a.d): 22 + 20 bits at most.
  const unsigned shift = 32;
  BigInt total = 0;
  FlatCounter counter(m * m);
  for (std::size_t lo = 0; lo < by_sum.size();) {
    std::size_t hi = lo;
    counter.clear();
    while (hi < by_sum.size() && by_sum[hi].first == by_sum[lo].first) {
      const std::size_t i = by_sum[hi].second;
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t d = 0; d < m; ++d) counter.add((sum[b * m + d] << shift) | prod[i * m + d]);
      ++hi;
    }
    total += big128(counter.sum_squares());
    lo = hi;
  }
  return total;
}

}  // namespace heislab
