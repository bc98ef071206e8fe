#include "heislab/oracles.hpp"

#include <map>

namespace heislab::oracle {

namespace {

using Matrix = std::vector<std::vector<Elem>>;

Matrix to_matrix(const FieldCtx& ctx, const HeisPoint& a) {
  const std::size_t n = a.x.size(), size = n + 2;
  Matrix m(size, std::vector<Elem>(size, ctx.zero()));
  for (std::size_t i = 0; i < size; ++i) m[i][i] = ctx.one();
  for (std::size_t i = 0; i < n; ++i) {
    m[0][i + 1] = a.x[i];
    m[i + 1][size - 1] = a.y[i];
  }
  m[0][size - 1] = a.z;
  return m;
}

}  // namespace

HeisPoint matrix_mul(const FieldCtx& ctx, const HeisPoint& a, const HeisPoint& b) {
  require(a.x.size() == b.x.size(), ErrorKind::DimensionMismatch, "matrix sizes differ");
  const Matrix ma = to_matrix(ctx, a), mb = to_matrix(ctx, b);
  const std::size_t size = ma.size(), n = size - 2;
  Matrix c(size, std::vector<Elem>(size, ctx.zero()));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t k = 0; k < size; ++k) c[i][j] = ctx.add(c[i][j], ctx.mul_poly(ma[i][k], mb[k][j]));
  HeisPoint out{FieldVector(n), FieldVector(n), c[0][size - 1]};
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = c[0][i + 1];
    out.y[i] = c[i + 1][size - 1];
  }
  return out;
}

std::uint64_t triple_count(const FieldCtx& ctx, std::span<const FieldVector> e) {
  std::uint64_t t = 0;
  for (const auto& v : e)
    for (const auto& x : e)
      for (const auto& x2 : e) {
        Elem acc = ctx.zero();
        for (std::size_t i = 0; i < v.size(); ++i) acc = ctx.add(acc, ctx.mul_poly(v[i], ctx.sub(x[i], x2[i])));
        if (acc == ctx.zero()) ++t;
      }
  return t;
}

std::uint64_t lifted_system_count(const FieldCtx& ctx, std::span<const FieldVector> e) {
  std::uint64_t t = 0;
  for (const auto& a2 : e)
    for (const auto& b : e)
      for (const auto& b2 : e) {
        const Elem rhs = dot(ctx, a2, vec_sub(ctx, b, b2));
        for (const auto& c : e)
          for (const auto& c2 : e) {
            const FieldVector diff = vec_sub(ctx, c2, c);
            for (const auto& d : e)
              if (dot(ctx, d, diff) == rhs) ++t;
          }
      }
  return t;
}

BigInt bilinear_pairs(const LiftedMultiset& a, const LiftedMultiset& b) {
  const FieldCtx& ctx = a.field();
  BigInt n = 0;
  for (const auto& [ka, ma] : a.entries()) {
    const auto [va, sa] = a.decode(ka);
    for (const auto& [kb, mb] : b.entries()) {
      const auto [vb, sb] = b.decode(kb);
      if (dot(ctx, va, vb) == ctx.add(sa, sb)) n += big(ma) * big(mb);
    }
  }
  return n;
}

std::uint64_t vector_S_tuples(const FieldCtx& ctx, std::span<const FieldVector> e) {
  std::set<FieldVector> in(e.begin(), e.end());
  std::uint64_t n = 0;
  for (const auto& a2 : e)
    for (const auto& c2 : e)
      for (const auto& c : e) {
        const FieldVector a = vec_sub(ctx, vec_add(ctx, a2, c2), c);
        if (!in.count(a)) continue;
        for (const auto& b : e)
          for (const auto& d : e)
            for (const auto& b2 : e) {
              const FieldVector d2 = vec_sub(ctx, vec_add(ctx, b, d), b2);
              if (in.count(d2) && dot(ctx, a, d) == dot(ctx, a2, d2)) ++n;
            }
      }
  return n;
}

std::uint64_t vector_h1_size(const FieldCtx& ctx, std::span<const FieldVector> e) {
  std::set<std::tuple<FieldVector, FieldVector, Elem>> out;
  for (const auto& a : e)
    for (const auto& b : e)
      for (const auto& c : e)
        for (const auto& d : e) out.emplace(vec_add(ctx, a, c), vec_add(ctx, b, d), dot(ctx, a, d));
  return out.size();
}

WeightedLineSet<FieldDomain> all_lines(const FieldDomain& dom) {
  const FieldCtx& ctx = dom.field();
  WeightedLineSet<FieldDomain> out;
  for (Elem b : ctx.elements())
    for (Elem c : ctx.elements()) out.add({ctx.one(), b, c});  // x + b y = c
  for (Elem c : ctx.elements()) out.add({ctx.zero(), ctx.one(), c});  // y = c
  return out;
}

}  // namespace heislab::oracle
