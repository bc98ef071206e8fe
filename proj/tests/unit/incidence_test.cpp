#include <doctest.h>

#include "heislab/incidence.hpp"
#include "heislab/oracles.hpp"
#include "check_error.hpp"
#include "random_sets.hpp"

using namespace heislab;
using heislab::testing::elems;
using heislab::testing::Rng;

namespace {

using FP = Point2<FieldDomain>;
using CP = Point2<ComplexDomain>;

std::vector<ComplexRational> range(long lo, long hi) {
  std::vector<ComplexRational> out;
  for (long i = lo; i <= hi; ++i) out.emplace_back(i);
  return out;
}

Line<ComplexDomain> cline(long a, long b, long c) {
  const ComplexDomain d;
  return make_line(d, ComplexRational(a), ComplexRational(b), ComplexRational(c));
}

}  // namespace

TEST_CASE("canonical lines") {
  const FieldDomain d(FieldCtx::make(5));
  const auto l = make_line(d, Elem{2}, Elem{4}, Elem{1});
  CHECK(l.a == Elem{1});
  CHECK(l.b == Elem{2});
  CHECK(l.c == Elem{3});
  CHECK(make_line(d, l.a, l.b, l.c) == l);
  for (std::uint32_t s = 1; s < 5; ++s) CHECK(make_line(d, Elem{2 * s % 5}, Elem{4 * s % 5}, Elem{s}) == l);
  const auto horizontal = make_line(d, Elem{0}, Elem{3}, Elem{3});
  CHECK(horizontal.b == Elem{1});
  CHECK(horizontal.c == Elem{1});
  CHECK_ERROR_KIND(make_line(d, Elem{0}, Elem{0}, Elem{1}), ErrorKind::InvalidSpec);
  CHECK(format_line(d, l) == "1:2:3");
  CHECK(parse_line(d, "2:4:1") == l);
  CHECK_ERROR_KIND(parse_line(d, "1:2"), ErrorKind::ParseError);
}

TEST_CASE("line through two points") {
  const ComplexDomain d;
  const CP p{ComplexRational(0), ComplexRational(0)}, r{ComplexRational(1), ComplexRational(2)};
  const auto l = line_through(d, p, r);
  CHECK(on_line(d, l, p));
  CHECK(on_line(d, l, r));
  CHECK_FALSE(on_line(d, l, CP{ComplexRational(1), ComplexRational(1)}));
  const auto vertical = line_through(d, p, CP{ComplexRational(0), ComplexRational(5)});
  CHECK(vertical == cline(1, 0, 0));
}

TEST_CASE("every line of the plane") {
  for (std::uint64_t p : {3, 5}) {
    const FieldDomain d(FieldCtx::make(p));
    const auto lines = oracle::all_lines(d);
    CHECK(lines.distinct() == p * p + p);
    const auto plane = PointSet2<FieldDomain>::grid(d.field().elements());
    const auto res = incidence_count(d, plane, lines);
    CHECK(res.incidences == big(p * p * p + p * p));
    CHECK(res.incidences == oracle::incidences(d, std::span<const FP>(plane.points()), lines));
    const auto cubes = sum_cubes(d, plane, lines);
    CHECK(cubes.cubes == big((p * p + p) * p * p * p));
    CHECK(cubes.holder_checked);
  }
}

TEST_CASE("weighted incidences") {
  const ComplexDomain d;
  WeightedLineSet<ComplexDomain> l;
  l.add(cline(0, 1, 0), 3);  // y = 0
  const std::vector<CP> pts = {{ComplexRational(0), ComplexRational(0)}, {ComplexRational(1), ComplexRational(0)}};
  const PointSet2<ComplexDomain> p{std::span<const CP>(pts)};
  const auto res = incidence_count(d, p, l);
  CHECK(res.incidences == 6);
  CHECK(res.lines == 3);
  CHECK(res.real_bound.has_value());
  CHECK(l.second_moment() == 9);
  CHECK_FALSE(l.unweighted());
  CHECK(sum_cubes(d, p, l).cubes == 8);
  CHECK_FALSE(sum_cubes(d, p, l).holder_checked);

  WeightedLineSet<ComplexDomain> one;
  one.add(cline(1, 1, 1));
  const std::vector<CP> single = {{ComplexRational(1), ComplexRational(0)}};
  CHECK(incidence_count(d, PointSet2<ComplexDomain>{std::span<const CP>(single)}, one).incidences == 1);
}

TEST_CASE("rich lines") {
  const ComplexDomain d;
  const auto a = range(1, 3);
  const auto grid = PointSet2<ComplexDomain>::grid(a);
  const auto rich = rich_lines(d, grid, 3);
  CHECK(rich.lines.size() == 8);
  for (const auto& [l, k] : rich.lines) CHECK(k == 3);
  CHECK(rich.ratio.has_value());
  CHECK(rich_lines(d, grid, 4).lines.empty());
  CHECK(rich_lines(d, grid, 2).lines.size() == 20);
  CHECK_ERROR_KIND(rich_lines(d, grid, 1), ErrorKind::InvalidSpec);
}

TEST_CASE("sum of cubes over spanned lines") {
  const ComplexDomain d;
  const auto grid = PointSet2<ComplexDomain>::grid(range(1, 3));
  // 8 lines with 3 points, 12 with 2
  CHECK(sum_cubes_spanned(d, grid) == 8 * 27 + 12 * 8);
  WeightedLineSet<ComplexDomain> spanned;
  for (const auto& [l, k] : spanned_lines(d, grid)) spanned.add(l);
  const auto res = sum_cubes(d, grid, spanned);
  CHECK(res.cubes == 8 * 27 + 12 * 8);
  CHECK(res.holder_checked);
}

TEST_CASE("collinear triples") {
  const ComplexDomain c;
  CHECK(collinear_triples(c, std::span<const ComplexRational>(range(1, 1))).ordered == 1);
  for (long n = 2; n <= 4; ++n) {
    const auto a = range(0, n - 1);
    CHECK(collinear_triples(c, std::span<const ComplexRational>(a)).ordered ==
          big(oracle::collinear_det(c, std::span<const ComplexRational>(a))));
  }
  Rng rng(12);
  for (std::uint64_t p : {3, 5, 7}) {
    const FieldDomain d(FieldCtx::make(p));
    for (int t = 0; t < 3; ++t) {
      const auto a = testing::random_scalars(d.field(), rng, 1 + rng.below(p), false);
      const auto res = collinear_triples(d, std::span<const Elem>(a));
      CHECK(res.ordered == big(oracle::collinear_det(d, std::span<const Elem>(a))));
    }
  }
}

TEST_CASE("dyadic buckets") {
  WeightedLineSet<ComplexDomain> l;
  l.add(cline(1, 0, 1), 1);
  l.add(cline(1, 0, 2), 2);
  l.add(cline(1, 0, 3), 4);
  l.add(cline(1, 0, 4), 5);
  const auto buckets = dyadic_buckets(l);
  REQUIRE(buckets.size() == 3);
  CHECK(buckets[0].k == 1);
  CHECK(buckets[0].lines.size() == 1);
  CHECK(buckets[1].k == 2);
  CHECK(buckets[1].lines.size() == 1);
  CHECK(buckets[2].k == 4);
  CHECK(buckets[2].lines.size() == 2);
  CHECK(dyadic_buckets(WeightedLineSet<ComplexDomain>{}).empty());
}

TEST_CASE("reduction lines reproduce X") {
  const FieldDomain f7(FieldCtx::make(7));
  CHECK(reduction_lines(f7, std::span<const Elem>(elems({3}))).distinct() == 0);
  Rng rng(19);
  for (std::uint64_t p : {7, 11, 13}) {
    const FieldDomain d(FieldCtx::make(p));
    for (int t = 0; t < 4; ++t) {
      const auto a = testing::random_scalars(d.field(), rng, 1 + rng.below(7));
      const std::span<const Elem> s(a);
      const auto lines = reduction_lines(d, s);
      const auto grid = PointSet2<FieldDomain>::grid(s);
      CHECK(incidence_count(d, grid, lines).incidences == x_count(d, s));
      const BigInt n = big(a.size());
      CHECK(lines.total() == (energy_add(d, s) - n * n) * n);
      for (const auto& b : dyadic_buckets(lines)) CHECK(b.k >= 1);
    }
  }
  CHECK_ERROR_KIND(reduction_lines(f7, std::span<const Elem>(elems({0, 2}))), ErrorKind::ZeroInSet);
}

TEST_CASE("incidences are translation invariant") {
  const FieldDomain d(FieldCtx::make(11));
  const auto& f = d.field();
  Rng rng(2);
  const auto a = testing::random_scalars(f, rng, 5);
  const auto lines = reduction_lines(d, std::span<const Elem>(a));
  const auto grid = PointSet2<FieldDomain>::grid(std::span<const Elem>(a));
  const Elem tx{3}, ty{7};
  std::vector<FP> moved;
  for (const auto& pt : grid.points()) moved.push_back({f.add(pt[0], tx), f.add(pt[1], ty)});
  WeightedLineSet<FieldDomain> shifted;
  for (const auto& [l, m] : lines.entries())
    shifted.add(make_line(d, l.a, l.b, f.add(l.c, f.add(f.mul(l.a, tx), f.mul(l.b, ty)))), m);
  CHECK(incidence_count(d, PointSet2<FieldDomain>{std::span<const FP>(moved)}, shifted).incidences ==
        incidence_count(d, grid, lines).incidences);
}
