#pragma once

// Brute-force reference counts. Each one enumerates the defining tuple
// system directly and shares no code path with the production algorithms;
// the verify suites and the test binaries compare against them.

#include <cstdint>
#include <set>
#include <span>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/domain.hpp"
#include "heislab/ffield.hpp"
#include "heislab/heisenberg.hpp"
#include "heislab/incidence.hpp"
#include "heislab/spectral.hpp"

namespace heislab::oracle {

/// Product through explicit (n+2) x (n+2) unitriangular matrices.
HeisPoint matrix_mul(const FieldCtx& ctx, const HeisPoint& a, const HeisPoint& b);

/// #{(v, x, x') in E^3 : v.(x - x') = 0}
std::uint64_t triple_count(const FieldCtx& ctx, std::span<const FieldVector> e);

/// Solutions in E^6 of d.(c' - c) = a'.(b - b').
std::uint64_t lifted_system_count(const FieldCtx& ctx, std::span<const FieldVector> e);

/// N(A, B) by enumerating support pairs with multiplicities.
BigInt bilinear_pairs(const LiftedMultiset& a, const LiftedMultiset& b);

/// S for vectors via the eliminated system a = a' + c' - c, d' = b + d - b'.
std::uint64_t vector_S_tuples(const FieldCtx& ctx, std::span<const FieldVector> e);

/// Distinct products of [E, E, 0] with itself, as (x, y, z) tuples.
std::uint64_t vector_h1_size(const FieldCtx& ctx, std::span<const FieldVector> e);

/// #{(a,b,c,d) : a + b = c + d}
template <class D>
std::uint64_t energy_add(const D& d, std::span<const typename D::Value> a) {
  std::uint64_t n = 0;
  for (const auto& x : a)
    for (const auto& y : a)
      for (const auto& z : a)
        for (const auto& w : a)
          if (d.add(x, y) == d.add(z, w)) ++n;
  return n;
}

/// #{(a,b,c,d) : a b = c d}
template <class D>
std::uint64_t energy_mul(const D& d, std::span<const typename D::Value> a) {
  std::uint64_t n = 0;
  for (const auto& x : a)
    for (const auto& y : a)
      for (const auto& z : a)
        for (const auto& w : a)
          if (d.mul(x, y) == d.mul(z, w)) ++n;
  return n;
}

/// Solutions in A^8 of a + c = a' + c', b + d = b' + d', a d = a' d'.
template <class D>
std::uint64_t S_full(const D& dom, std::span<const typename D::Value> s) {
  std::uint64_t n = 0;
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s)
          for (const auto& a2 : s)
            for (const auto& b2 : s)
              for (const auto& c2 : s)
                for (const auto& d2 : s)
                  if (dom.add(a, c) == dom.add(a2, c2) && dom.add(b, d) == dom.add(b2, d2) &&
                      dom.mul(a, d) == dom.mul(a2, d2))
                    ++n;
  return n;
}

/// The same system with a and d' eliminated: O(|A|^6).
template <class D>
std::uint64_t S_tuples(const D& dom, std::span<const typename D::Value> s) {
  using V = typename D::Value;
  std::unordered_set<V, typename D::Hash> in(s.begin(), s.end());
  std::uint64_t n = 0;
  for (const auto& a2 : s)
    for (const auto& c2 : s)
      for (const auto& c : s) {
        const V a = dom.sub(dom.add(a2, c2), c);
        if (!in.count(a)) continue;
        for (const auto& b : s)
          for (const auto& d : s)
            for (const auto& b2 : s) {
              const V d2 = dom.sub(dom.add(b, d), b2);
              if (in.count(d2) && dom.mul(a, d) == dom.mul(a2, d2)) ++n;
            }
      }
  return n;
}

/// #{(a', c, c', b, b', d) : b != b', d (c' - c) = a' (b - b'), b + d - b' in A}
template <class D>
std::uint64_t X_tuples(const D& dom, std::span<const typename D::Value> s) {
  std::unordered_set<typename D::Value, typename D::Hash> in(s.begin(), s.end());
  std::uint64_t n = 0;
  for (const auto& a2 : s)
    for (const auto& c : s)
      for (const auto& c2 : s)
        for (const auto& b : s)
          for (const auto& b2 : s) {
            if (b == b2) continue;
            for (const auto& d : s)
              if (in.count(dom.sub(dom.add(b, d), b2)) &&
                  dom.mul(d, dom.sub(c2, c)) == dom.mul(a2, dom.sub(b, b2)))
                ++n;
          }
  return n;
}

/// #{(a, b, c, a', b', c') : a (b - c) = a' (b' - c')}
template <class D>
std::uint64_t M_tuples(const D& dom, std::span<const typename D::Value> s) {
  std::uint64_t n = 0;
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s) {
        const auto lhs = dom.mul(a, dom.sub(b, c));
        for (const auto& a2 : s)
          for (const auto& b2 : s)
            for (const auto& c2 : s)
              if (lhs == dom.mul(a2, dom.sub(b2, c2))) ++n;
      }
  return n;
}

/// |{(a + c, b + d, a d)}| by collecting every quadruple.
template <class D>
std::uint64_t h1_size(const D& dom, std::span<const typename D::Value> s) {
  using V = typename D::Value;
  std::set<std::tuple<V, V, V>> out;
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s) out.emplace(dom.add(a, c), dom.add(b, d), dom.mul(a, d));
  return out.size();
}

/// Ordered triples of A x A with det(p2 - p1, p3 - p1) = 0.
template <class D>
std::uint64_t collinear_det(const D& dom, std::span<const typename D::Value> s) {
  std::vector<Point2<D>> pts;
  for (const auto& x : s)
    for (const auto& y : s) pts.push_back({x, y});
  std::uint64_t n = 0;
  for (const auto& p1 : pts)
    for (const auto& p2 : pts)
      for (const auto& p3 : pts) {
        const auto det = dom.sub(dom.mul(dom.sub(p2[0], p1[0]), dom.sub(p3[1], p1[1])),
                                 dom.mul(dom.sub(p2[1], p1[1]), dom.sub(p3[0], p1[0])));
        if (dom.is_zero(det)) ++n;
      }
  return n;
}

/// sum_l m(l) #{p in P : p on l} by testing every point against every line.
template <class D>
BigInt incidences(const D& dom, std::span<const Point2<D>> pts, const WeightedLineSet<D>& lines) {
  BigInt n = 0;
  for (const auto& [l, m] : lines.entries()) {
    std::uint64_t k = 0;
    for (const auto& p : pts)
      if (dom.add(dom.mul(l.a, p[0]), dom.mul(l.b, p[1])) == l.c) ++k;
    n += big(k) * big(m);
  }
  return n;
}

/// Every line of F_q^2, multiplicity one.
WeightedLineSet<FieldDomain> all_lines(const FieldDomain& dom);

}  // namespace heislab::oracle
