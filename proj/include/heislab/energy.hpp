#pragma once

// Energies and the tuple counts behind the product-set estimates, generic
// over an exact domain (FieldDomain or ComplexDomain).
//
// Values are interned to dense integer ids once per call (field elements are
// their own ids), after which the quartic loops only hash 64-bit keys.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/domain.hpp"
#include "heislab/error.hpp"
#include "heislab/flat_counter.hpp"
#include "heislab/kernels.hpp"
#include "heislab/limits.hpp"

namespace heislab {

template <class D>
using Point2 = std::array<typename D::Value, 2>;

/// Sorted, deduplicated copy.
template <class V>
std::vector<V> as_sorted_set(std::span<const V> a) {
  std::vector<V> v(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Maps domain values to dense ids.
template <class D>
class Interner {
 public:
  using Value = typename D::Value;

  explicit Interner(const D& d) {
    if constexpr (D::finite) bound_ = d.field().q();
  }

  std::uint32_t id(const Value& v) {
    if constexpr (D::finite) {
      return v.v;
    } else {
      auto [it, inserted] = ids_.try_emplace(v, static_cast<std::uint32_t>(ids_.size()));
      return it->second;
    }
  }

  /// One past the largest id handed out.
  std::size_t bound() const noexcept {
    if constexpr (D::finite) return bound_;
    else return ids_.size();
  }

 private:
  std::size_t bound_ = 0;
  std::unordered_map<Value, std::uint32_t, typename D::Hash> ids_;
};

/// Pairwise sum and product ids over a set, row-major |A| x |A|.
template <class D>
struct PairTables {
  std::vector<std::uint32_t> sum, prod;
  std::size_t sum_ids = 0, prod_ids = 0;
  std::size_t n = 0;

  PairTables(const D& d, std::span<const typename D::Value> a) : n(a.size()) {
    sum.resize(n * n);
    prod.resize(n * n);
    if constexpr (D::finite) {
      const FieldCtx& ctx = d.field();
      std::vector<Elem> row(n);
      for (std::size_t i = 0; i < n; ++i) {
        ctx.add_row(a[i], a, row);
        for (std::size_t j = 0; j < n; ++j) sum[i * n + j] = row[j].v;
        ctx.mul_row(a[i], a, row);
        for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = row[j].v;
      }
      sum_ids = prod_ids = ctx.q();
    } else {
      Interner<D> sums(d), prods(d);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          sum[i * n + j] = sums.id(d.add(a[i], a[j]));
          prod[i * n + j] = prods.id(d.mul(a[i], a[j]));
        }
      sum_ids = sums.bound();
      prod_ids = prods.bound();
    }
  }
};

namespace detail {

inline std::uint64_t histogram_energy(std::span<const std::uint32_t> ids, std::size_t bound) {
  std::vector<std::uint32_t> hist(bound, 0);
  for (auto id : ids) ++hist[id];
  return kernels::sum_squares(hist);
}

template <class D>
bool contains_zero(const D& d, std::span<const typename D::Value> a) {
  return std::any_of(a.begin(), a.end(), [&](const auto& x) { return d.is_zero(x); });
}

}  // namespace detail

/// E+(A) = #{a + b = c + d}.
template <class D>
BigInt energy_add(const D& d, std::span<const typename D::Value> a_in) {
  const auto a = as_sorted_set(a_in);
  require(a.size() < 65536, ErrorKind::LimitExceeded, "energy_add: |A| too large for 32-bit histograms");
  check_pairs(sat_mul(a.size(), a.size()), "energy_add");
  PairTables<D> t(d, a);
  return big(detail::histogram_energy(t.sum, t.sum_ids));
}

/// E*(A) = #{a b = c d}.
template <class D>
BigInt energy_mul(const D& d, std::span<const typename D::Value> a_in) {
  const auto a = as_sorted_set(a_in);
  require(a.size() < 65536, ErrorKind::LimitExceeded, "energy_mul: |A| too large for 32-bit histograms");
  check_pairs(sat_mul(a.size(), a.size()), "energy_mul");
  PairTables<D> t(d, a);
  return big(detail::histogram_energy(t.prod, t.prod_ids));
}

template <class D>
struct DotProductSet {
  std::vector<typename D::Value> values;  // sorted
  std::uint64_t max_row = 0;              // max_a |{a.b : b in E}|
};

/// Pi(E) = {a.b : a, b in E} for E in the plane.
template <class D>
DotProductSet<D> dot_product_set(const D& d, std::span<const Point2<D>> e_in) {
  const auto e = as_sorted_set(e_in);
  check_pairs(sat_mul(e.size(), e.size()), "dot_product_set");
  DotProductSet<D> out;
  std::unordered_set<typename D::Value, typename D::Hash> all, row;
  for (const auto& a : e) {
    row.clear();
    for (const auto& b : e) {
      auto v = d.add(d.mul(a[0], b[0]), d.mul(a[1], b[1]));
      row.insert(v);
      all.insert(std::move(v));
    }
    out.max_row = std::max<std::uint64_t>(out.max_row, row.size());
  }
  out.values.assign(all.begin(), all.end());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

struct H1Stats {
  std::uint64_t size = 0;  // |[A, A, 0][A, A, 0]|
  BigInt S;                // sum_g r(g)^2
};

/// One pass over the |A|^4 products (a + c, b + d, a d). Quadruples are keyed
/// by (b + d, a d) inside buckets of equal a + c, so memory stays O(|A|^2)
/// per bucket.
template <class D>
H1Stats h1_stats(const D& d, std::span<const typename D::Value> a_in) {
  const auto a = as_sorted_set(a_in);
  const std::size_t n = a.size();
  check_pairs(sat_pow(n, 4), "h1_stats");
  PairTables<D> t(d, a);

  // bucket[s] lists i once for every j with a_i + a_j = s.
  std::vector<std::vector<std::uint32_t>> bucket(t.sum_ids);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bucket[t.sum[i * n + j]].push_back(static_cast<std::uint32_t>(i));

  H1Stats out;
  unsigned __int128 s = 0;
  FlatCounter counter(n * n);
  for (const auto& members : bucket) {
    if (members.empty()) continue;
    counter.clear();
    for (auto i : members)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t dd = 0; dd < n; ++dd)
          counter.add((std::uint64_t{t.sum[b * n + dd]} << 32) | t.prod[i * n + dd]);
    out.size += counter.size();
    s += counter.sum_squares();
  }
  out.S = big128(s);
  return out;
}

/// S: solutions in A^8 of a + c = a' + c', b + d = b' + d', a d = a' d'.
template <class D>
BigInt quad_count_S(const D& d, std::span<const typename D::Value> a) {
  return h1_stats(d, a).S;
}

/// |[A, A, 0][A, A, 0]| = #{(a + c, b + d, a d)}.
template <class D>
std::uint64_t h1_product_size(const D& d, std::span<const typename D::Value> a) {
  return h1_stats(d, a).size;
}

/// Slope weights w(s) = #{(b, b', d) in A^3 : b != b', b + d - b' in A,
/// s = d / (b - b')}, keyed by slope. Requires 0 not in A.
template <class D>
std::vector<std::pair<typename D::Value, std::uint64_t>> slope_weights(const D& d,
                                                                      std::span<const typename D::Value> a) {
  using V = typename D::Value;
  std::unordered_set<V, typename D::Hash> members(a.begin(), a.end());
  std::unordered_map<V, std::uint64_t, typename D::Hash> w;
  for (const auto& b : a)
    for (const auto& b2 : a) {
      if (b == b2) continue;
      const V delta = d.sub(b, b2);
      const V inv_delta = d.div(d.one(), delta);
      for (const auto& dd : a)
        if (members.count(d.add(dd, delta))) ++w[d.mul(dd, inv_delta)];
    }
  std::vector<std::pair<V, std::uint64_t>> out(w.begin(), w.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

/// X = #{(a', c, c', b, b', d) in A^6 : b != b', d (c' - c) = a' (b - b'),
/// b + d - b' in A}. Throws ZeroInSet.
template <class D>
BigInt x_count(const D& d, std::span<const typename D::Value> a_in) {
  using V = typename D::Value;
  const auto a = as_sorted_set(a_in);
  require(!detail::contains_zero(d, std::span<const V>(a)), ErrorKind::ZeroInSet, "x_count requires 0 not in A");
  check_pairs(sat_pow(a.size(), 3), "x_count");
  const auto slopes = slope_weights(d, std::span<const V>(a));
  std::unordered_map<V, std::uint64_t, typename D::Hash> w(slopes.begin(), slopes.end());

  // Differences c' - c != 0 with multiplicity.
  std::unordered_map<V, std::uint64_t, typename D::Hash> diff;
  for (const auto& c : a)
    for (const auto& c2 : a)
      if (!(c == c2)) ++diff[d.sub(c2, c)];

  // a' = s (c' - c)  <=>  s = a' / (c' - c)
  unsigned __int128 total = 0;
  for (const auto& [delta, r] : diff) {
    const V inv = d.div(d.one(), delta);
    for (const auto& a2 : a) {
      auto it = w.find(d.mul(a2, inv));
      if (it != w.end()) total += static_cast<unsigned __int128>(r) * it->second;
    }
  }
  return big128(total);
}

struct MCount {
  BigInt count;
  BigInt energy_mul;
  double bound = 0;  // 2 E*(A)^{1/2} |A|^3
};

/// M = #{(a, b, c, a', b', c') in A^6 : a (b - c) = a' (b' - c')}, checked
/// against M <= 2 E*(A)^{1/2} |A|^3. Throws ZeroInSet, SetTooSmall.
template <class D>
MCount m_count(const D& d, std::span<const typename D::Value> a_in) {
  using V = typename D::Value;
  const auto a = as_sorted_set(a_in);
  require(a.size() >= 2, ErrorKind::SetTooSmall, "m_count requires |A| >= 2");
  require(!detail::contains_zero(d, std::span<const V>(a)), ErrorKind::ZeroInSet, "m_count requires 0 not in A");
  check_pairs(sat_pow(a.size(), 3), "m_count");

  std::unordered_map<V, std::uint64_t, typename D::Hash> diff;
  for (const auto& b : a)
    for (const auto& c : a) ++diff[d.sub(b, c)];
  Interner<D> ids(d);
  std::vector<std::uint32_t> products;
  std::vector<std::uint64_t> weights;
  for (const auto& [delta, r] : diff)
    for (const auto& x : a) {
      products.push_back(ids.id(d.mul(x, delta)));
      weights.push_back(r);
    }
  std::vector<std::uint64_t> rep(ids.bound(), 0);
  for (std::size_t i = 0; i < products.size(); ++i) rep[products[i]] += weights[i];
  unsigned __int128 m = 0;
  for (auto r : rep) m += static_cast<unsigned __int128>(r) * r;

  MCount out;
  out.count = big128(m);
  out.energy_mul = energy_mul(d, std::span<const V>(a));
  const BigInt n3 = big_pow(a.size(), 3);
  out.bound = 2.0 * std::sqrt(to_double(out.energy_mul)) * to_double(n3);
  require(out.count * out.count <= 4 * out.energy_mul * n3 * n3, ErrorKind::InvariantViolation,
          "six-tuple count exceeds 2 E*(A)^{1/2} |A|^3");
  return out;
}

/// S for E in F_q^n: solutions in E^8 of a + c = a' + c', b + d = b' + d',
/// a.d = a'.d'. Equals the collision energy of [E, E, 0]^2.
BigInt quad_count_S_vectors(const FieldCtx& ctx, std::span<const FieldVector> e);

}  // namespace heislab
