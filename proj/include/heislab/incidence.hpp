#pragma once

// Affine point-line incidences in the plane over an exact domain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/domain.hpp"
#include "heislab/energy.hpp"
#include "heislab/error.hpp"
#include "heislab/limits.hpp"

namespace heislab {

/// a x + b y = c, canonical: the first nonzero of (a, b) is 1.
template <class D>
struct Line {
  using V = typename D::Value;
  V a, b, c;

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line& l, const Line& r) {
    return std::tie(l.a, l.b, l.c) <=> std::tie(r.a, r.b, r.c);
  }
};

template <class D>
struct LineHash {
  std::size_t operator()(const Line<D>& l) const noexcept {
    typename D::Hash h;
    std::uint64_t x = h(l.a);
    x = mix64(x ^ h(l.b));
    return static_cast<std::size_t>(mix64(x ^ h(l.c)));
  }
};

/// Canonical line a x + b y = c. Throws InvalidSpec for a = b = 0.
template <class D>
Line<D> make_line(const D& d, typename D::Value a, typename D::Value b, typename D::Value c) {
  if (!d.is_zero(a)) {
    const auto inv = d.div(d.one(), a);
    return {d.one(), d.mul(b, inv), d.mul(c, inv)};
  }
  require(!d.is_zero(b), ErrorKind::InvalidSpec, "line needs (a, b) != (0, 0)");
  const auto inv = d.div(d.one(), b);
  return {d.zero(), d.one(), d.mul(c, inv)};
}

/// The line through two distinct points.
template <class D>
Line<D> line_through(const D& d, const Point2<D>& p, const Point2<D>& r) {
  // (y2 - y1) x - (x2 - x1) y = (y2 - y1) x1 - (x2 - x1) y1
  const auto dx = d.sub(r[0], p[0]);
  const auto dy = d.sub(r[1], p[1]);
  return make_line(d, dy, d.neg(dx), d.sub(d.mul(dy, p[0]), d.mul(dx, p[1])));
}

template <class D>
bool on_line(const D& d, const Line<D>& l, const Point2<D>& p) {
  return d.add(d.mul(l.a, p[0]), d.mul(l.b, p[1])) == l.c;
}

/// "a:b:c"
template <class D>
std::string format_line(const D& d, const Line<D>& l) {
  return d.format(l.a) + ":" + d.format(l.b) + ":" + d.format(l.c);
}

template <class D>
Line<D> parse_line(const D& d, const std::string& text) {
  const auto i = text.find(':');
  const auto j = i == std::string::npos ? i : text.find(':', i + 1);
  require(j != std::string::npos && text.find(':', j + 1) == std::string::npos, ErrorKind::ParseError,
          "line must look like a:b:c, got '" + text + "'");
  return make_line(d, d.parse(text.substr(0, i)), d.parse(text.substr(i + 1, j - i - 1)), d.parse(text.substr(j + 1)));
}

/// Multiset of canonical lines.
template <class D>
class WeightedLineSet {
 public:
  void add(const Line<D>& l, std::uint64_t m = 1) {
    if (m) counts_[l] += m;
  }

  std::size_t distinct() const noexcept { return counts_.size(); }
  std::uint64_t multiplicity(const Line<D>& l) const {
    auto it = counts_.find(l);
    return it == counts_.end() ? 0 : it->second;
  }
  /// |L| = sum m(l)
  BigInt total() const {
    unsigned __int128 t = 0;
    for (const auto& [l, m] : counts_) t += m;
    return big128(t);
  }
  BigInt second_moment() const {
    unsigned __int128 t = 0;
    for (const auto& [l, m] : counts_) t += static_cast<unsigned __int128>(m) * m;
    return big128(t);
  }
  bool unweighted() const {
    return std::all_of(counts_.begin(), counts_.end(), [](const auto& e) { return e.second == 1; });
  }
  /// (line, m) sorted by line.
  std::vector<std::pair<Line<D>, std::uint64_t>> entries() const {
    std::vector<std::pair<Line<D>, std::uint64_t>> out(counts_.begin(), counts_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  std::unordered_map<Line<D>, std::uint64_t, LineHash<D>> counts_;
};

/// Deduplicated plane points with O(1) membership.
template <class D>
class PointSet2 {
 public:
  using V = typename D::Value;

  PointSet2() = default;
  explicit PointSet2(std::span<const Point2<D>> pts) {
    points_ = as_sorted_set(pts);
    for (const auto& p : points_) {
      ys_.insert(p[1]);
      members_.insert(key(p));
    }
  }
  /// A x A
  static PointSet2 grid(std::span<const V> a) {
    const auto s = as_sorted_set(a);
    std::vector<Point2<D>> pts;
    pts.reserve(s.size() * s.size());
    for (const auto& x : s)
      for (const auto& y : s) pts.push_back({x, y});
    return PointSet2(std::span<const Point2<D>>(pts));
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point2<D>>& points() const noexcept { return points_; }
  bool contains(const V& x, const V& y) const { return members_.count({x, y}) != 0; }
  /// Distinct second coordinates.
  const std::unordered_set<V, typename D::Hash>& ys() const noexcept { return ys_; }
  std::size_t count_with_y(const V& y) const {
    return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [&](const auto& p) { return p[1] == y; }));
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<V, V>& k) const noexcept {
      typename D::Hash h;
      return static_cast<std::size_t>(mix64(h(k.first) ^ (mix64(h(k.second)) << 1)));
    }
  };
  static std::pair<V, V> key(const Point2<D>& p) { return {p[0], p[1]}; }

  std::vector<Point2<D>> points_;
  std::unordered_set<V, typename D::Hash> ys_;
  std::unordered_set<std::pair<V, V>, KeyHash> members_;
};

/// |P n l|, walking the distinct y values of P.
template <class D>
std::uint64_t points_on(const D& d, const PointSet2<D>& p, const Line<D>& l) {
  if (d.is_zero(l.a)) return p.count_with_y(l.c);  // y = c
  std::uint64_t k = 0;
  for (const auto& y : p.ys())
    if (p.contains(d.sub(l.c, d.mul(l.b, y)), y)) ++k;  // x = c - b y
  return k;
}

struct IncidenceCount {
  BigInt incidences;  // sum_l m(l) |P n l|
  std::uint64_t points = 0;
  BigInt lines;  // |L| with multiplicity
  double finite_bound = 0;   // |P|^{11/15}|L|^{11/15} + |P| + |L|
  double finite_ratio = 0;
  std::optional<double> real_bound;  // |P|^{2/3}|L|^{2/3} + |P| + |L|, infinite domains only
  std::optional<double> real_ratio;
};

template <class D>
IncidenceCount incidence_count(const D& d, const PointSet2<D>& p, const WeightedLineSet<D>& l) {
  check_pairs(sat_mul(std::max<std::size_t>(p.ys().size(), 1), l.distinct()), "incidence_count");
  IncidenceCount out;
  unsigned __int128 total = 0;
  for (const auto& [line, m] : l.entries()) total += static_cast<unsigned __int128>(m) * points_on(d, p, line);
  out.incidences = big128(total);
  out.points = p.size();
  out.lines = l.total();
  const double np = static_cast<double>(out.points), nl = to_double(out.lines);
  const double inc = to_double(out.incidences);
  out.finite_bound = std::pow(np * nl, 11.0 / 15.0) + np + nl;
  out.finite_ratio = out.finite_bound > 0 ? inc / out.finite_bound : 0;
  if constexpr (!D::finite) {
    out.real_bound = std::pow(np * nl, 2.0 / 3.0) + np + nl;
    out.real_ratio = *out.real_bound > 0 ? inc / *out.real_bound : 0;
  }
  return out;
}

/// Spanned lines of P with their point counts, sorted by line. O(|P|^2).
template <class D>
std::vector<std::pair<Line<D>, std::uint64_t>> spanned_lines(const D& d, const PointSet2<D>& p) {
  const auto& pts = p.points();
  const std::size_t n = pts.size();
  check_pairs(sat_mul(n, n), "spanned_lines");
  // Each line through k points collects k(k-1)/2 unordered pairs.
  std::unordered_map<Line<D>, std::uint64_t, LineHash<D>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ++pairs[line_through(d, pts[i], pts[j])];
  std::vector<std::pair<Line<D>, std::uint64_t>> out;
  out.reserve(pairs.size());
  for (const auto& [l, c] : pairs) {
    auto k = static_cast<std::uint64_t>((1 + std::sqrt(1.0 + 8.0 * static_cast<double>(c))) / 2);
    while (k * (k - 1) / 2 < c) ++k;
    while (k * (k - 1) / 2 > c) --k;
    require(k * (k - 1) / 2 == c, ErrorKind::InvariantViolation, "pair count on a line is not triangular");
    out.emplace_back(l, k);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

template <class D>
struct RichLines {
  std::vector<std::pair<Line<D>, std::uint64_t>> lines;  // (line, |P n l|), sorted
  double bound = 0;  // |P|^2/t^3 + |P|/t
  std::optional<double> ratio;  // infinite domains only
};

/// Lines with at least t points of P. Throws InvalidSpec for t < 2.
template <class D>
RichLines<D> rich_lines(const D& d, const PointSet2<D>& p, std::uint64_t t) {
  require(t >= 2, ErrorKind::InvalidSpec, "rich_lines needs t >= 2");
  RichLines<D> out;
  if (t <= p.size())
    for (auto& e : spanned_lines(d, p))
      if (e.second >= t) out.lines.push_back(std::move(e));
  const double np = static_cast<double>(p.size()), tt = static_cast<double>(t);
  out.bound = np * np / (tt * tt * tt) + np / tt;
  if constexpr (!D::finite) out.ratio = out.bound > 0 ? static_cast<double>(out.lines.size()) / out.bound : 0;
  return out;
}

struct CubeSum {
  BigInt cubes;       // sum over distinct lines of |P n l|^3
  BigInt incidences;  // sum_l m(l) |P n l|
  BigInt lines;       // |L| with multiplicity
  bool holder_checked = false;
};

/// Sum of i(l)^3 over the distinct lines of L. On unweighted sets also checks
/// I^3 <= |L|^2 sum i^3.
template <class D>
CubeSum sum_cubes(const D& d, const PointSet2<D>& p, const WeightedLineSet<D>& l) {
  check_pairs(sat_mul(std::max<std::size_t>(p.ys().size(), 1), l.distinct()), "sum_cubes");
  CubeSum out;
  unsigned __int128 inc = 0;
  BigInt cubes = 0;
  for (const auto& [line, m] : l.entries()) {
    const std::uint64_t i = points_on(d, p, line);
    inc += static_cast<unsigned __int128>(m) * i;
    cubes += big(i) * big(i) * big(i);
  }
  out.cubes = cubes;
  out.incidences = big128(inc);
  out.lines = l.total();
  if (l.unweighted()) {
    out.holder_checked = true;
    require(out.incidences * out.incidences * out.incidences <= out.lines * out.lines * out.cubes,
            ErrorKind::InvariantViolation, "incidences exceed |L|^{2/3} (sum i^3)^{1/3}");
  }
  return out;
}

/// Sum of i(l)^3 over the lines spanned by P.
template <class D>
BigInt sum_cubes_spanned(const D& d, const PointSet2<D>& p) {
  BigInt cubes = 0;
  for (const auto& [l, k] : spanned_lines(d, p)) cubes += big(k) * big(k) * big(k);
  return cubes;
}

struct CollinearTriples {
  BigInt ordered;         // ordered triples in (A x A)^3 with zero determinant
  BigInt spanned_cubes;   // sum over spanned lines of |l n (A x A)|^3
};

/// Ordered collinear triples of A x A, repetitions allowed.
template <class D>
CollinearTriples collinear_triples(const D& d, std::span<const typename D::Value> a) {
  const auto grid = PointSet2<D>::grid(a);
  const BigInt n = big(grid.size());
  // all equal, exactly two equal (3 positions), then three distinct
  BigInt t = n + 3 * n * (n - 1);
  BigInt cubes = 0;
  for (const auto& [l, k] : spanned_lines(d, grid)) {
    const BigInt kk = big(k);
    t += kk * (kk - 1) * (kk - 2);
    cubes += kk * kk * kk;
  }
  if (grid.size() == 0) t = 0;
  return {t, cubes};
}

template <class D>
struct DyadicBucket {
  std::uint64_t k = 0;  // power of two
  std::vector<Line<D>> lines;  // sorted
};

/// Buckets lines by multiplicity, m(l) in [k, 2k), k = 2^j. Checks
/// k |L_k| <= |L| and k^2 |L_k| <= sum m(l)^2 for each bucket.
template <class D>
std::vector<DyadicBucket<D>> dyadic_buckets(const WeightedLineSet<D>& l) {
  std::vector<DyadicBucket<D>> out;
  const BigInt total = l.total(), moment = l.second_moment();
  for (const auto& [line, m] : l.entries()) {
    const std::uint64_t k = std::uint64_t{1} << (63 - __builtin_clzll(m));
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& b) { return b.k == k; });
    if (it == out.end()) {
      out.push_back({k, {}});
      it = out.end() - 1;
    }
    it->lines.push_back(line);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.k < y.k; });
  for (const auto& b : out) {
    const BigInt size = big(b.lines.size());
    require(big(b.k) * size <= total, ErrorKind::InvariantViolation, "k |L_k| exceeds |L|");
    require(big(b.k) * big(b.k) * size <= moment, ErrorKind::InvariantViolation, "k^2 |L_k| exceeds sum m^2");
  }
  return out;
}

/// The line multiset of the sum-product reduction: for each slope
/// s = d/(b - b') with b != b', b + d - b' in A, and each c in A, the line
/// y = s (x - c), stored canonically as x - y/s = c. Its incidences with
/// A x A equal x_count(A). Throws ZeroInSet.
template <class D>
WeightedLineSet<D> reduction_lines(const D& d, std::span<const typename D::Value> a_in) {
  using V = typename D::Value;
  const auto a = as_sorted_set(a_in);
  require(!detail::contains_zero(d, std::span<const V>(a)), ErrorKind::ZeroInSet, "reduction_lines requires 0 not in A");
  check_pairs(sat_pow(a.size(), 3), "reduction_lines");
  WeightedLineSet<D> out;
  for (const auto& [s, w] : slope_weights(d, std::span<const V>(a))) {
    const V slope_inv = d.neg(d.div(d.one(), s));
    for (const auto& c : a) out.add({d.one(), slope_inv, c}, w);
  }
  return out;
}

}  // namespace heislab
