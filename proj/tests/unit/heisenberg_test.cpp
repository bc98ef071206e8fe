#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "heislab/heisenberg.hpp"
#include "heislab/limits.hpp"
#include "heislab/oracles.hpp"
#include "check_error.hpp"
#include "random_sets.hpp"

using namespace heislab;
using heislab::testing::elems;
using heislab::testing::Rng;

namespace {

HeisPoint pt(std::initializer_list<std::uint32_t> x, std::initializer_list<std::uint32_t> y, std::uint32_t z) {
  return {elems(x), elems(y), Elem{z}};
}

std::vector<Elem> all(const FieldCtx& f) { return f.elements(); }

}  // namespace

TEST_CASE("multiplication in H_1(F_5)") {
  const auto f = FieldCtx::make(5);
  CHECK(heis_mul(f, pt({1}, {2}, 0), pt({3}, {4}, 0)) == pt({4}, {1}, 4));
  CHECK(heis_inv(f, pt({1}, {2}, 3)) == pt({4}, {3}, 4));
  CHECK(heis_mul(f, heis_identity(1), pt({1}, {2}, 3)) == pt({1}, {2}, 3));
  CHECK_ERROR_KIND(heis_mul(f, pt({1}, {2}, 0), pt({1, 1}, {2, 2}, 0)), ErrorKind::DimensionMismatch);
}

TEST_CASE("group laws agree with matrix multiplication") {
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {9, 1}, {3, 2}, {4, 3}}) {
    const auto f = FieldCtx::of_order(q);
    Rng rng(q * 10 + n);
    for (int t = 0; t < 2000; ++t) {
      const auto a = testing::random_point(f, n, rng), b = testing::random_point(f, n, rng),
                 c = testing::random_point(f, n, rng);
      REQUIRE(heis_mul(f, a, b) == oracle::matrix_mul(f, a, b));
      REQUIRE(heis_mul(f, heis_mul(f, a, b), c) == heis_mul(f, a, heis_mul(f, b, c)));
      REQUIRE(heis_mul(f, a, heis_inv(f, a)) == heis_identity(n));
      REQUIRE(heis_mul(f, heis_inv(f, a), a) == heis_identity(n));
      REQUIRE(heis_inv(f, heis_inv(f, a)) == a);
    }
  }
}

TEST_CASE("point text and codec round-trip") {
  const auto f = FieldCtx::make(3, 2);
  const HeisCodec codec(f, 2);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto a = testing::random_point(f, 2, rng);
    REQUIRE(parse_point(f, format_point(f, a)) == a);
    REQUIRE(codec.decode(codec.encode(a)) == a);
  }
  CHECK_ERROR_KIND(parse_point(FieldCtx::make(5), "1|2"), ErrorKind::ParseError);
}

TEST_CASE("full brick squared is the whole group") {
  for (std::uint64_t p : {3, 5, 7}) {
    const auto f = FieldCtx::make(p);
    const auto full = Brick::full(f, 1);
    CHECK(full.size() == p * p * p);
    const auto ps = product_set(full, full);
    CHECK(ps.size() == p * p * p);
    CHECK(coset_count(ps) == p * p);
    // every element has exactly |H| representations
    CHECK(std::all_of(ps.counts.begin(), ps.counts.end(), [&](std::uint64_t c) { return c == p * p * p; }));
  }
}

TEST_CASE("product set counts are consistent") {
  const auto f = FieldCtx::make(5);
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    std::vector<HeisPoint> s1, s2;
    for (int i = 0; i < 12; ++i) {
      s1.push_back(testing::random_point(f, 1, rng));
      s2.push_back(testing::random_point(f, 1, rng));
    }
    const auto ps = product_set(f, s1, s2);
    BigInt total = 0, squares = 0;
    for (auto c : ps.counts) {
      total += big(c);
      squares += big(c) * big(c);
    }
    CHECK(total == ps.pairs);
    CHECK(squares == ps.collision_energy);
    // Cauchy-Schwarz: |B1 B2| * sum r^2 >= (|B1||B2|)^2
    CHECK(big(ps.size()) * ps.collision_energy >= ps.pairs * ps.pairs);
    for (const auto& a : s1)
      for (const auto& b : s2) REQUIRE(ps.contains(heis_mul(f, a, b)));
    std::vector<std::uint64_t> expected;
    for (const auto& a : s1)
      for (const auto& b : s2) expected.push_back(ps.codec.encode(heis_mul(f, a, b)));
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    CHECK(expected == ps.keys);
  }
}

TEST_CASE("product set does not depend on the worker count") {
  const auto f = FieldCtx::make(7);
  const auto b = Brick::box(f, {elems({0, 1, 3, 5})}, {elems({1, 2, 6})}, elems({0, 4}));
  const auto one = product_set(b, b, 1), three = product_set(b, b, 3), many = product_set(b, b, 16);
  CHECK(one.keys == three.keys);
  CHECK(one.counts == three.counts);
  CHECK(one.keys == many.keys);
  CHECK(one.collision_energy == many.collision_energy);
}

TEST_CASE("subspace bricks stay inside [E, E, F_q]") {
  const auto f = FieldCtx::make(5);
  // E spanned by (1,0,2) and (0,1,3)
  std::vector<FieldVector> e;
  for (Elem s : f.elements())
    for (Elem t : f.elements()) e.push_back({s, t, f.add(f.mul(s, Elem{2}), f.mul(t, Elem{3}))});
  const auto b = Brick::general(f, 3, e, e, elems({0}));
  const auto ps = product_set(b, b);
  std::sort(e.begin(), e.end());
  for (const auto& g : ps.points()) {
    REQUIRE(std::binary_search(e.begin(), e.end(), g.x));
    REQUIRE(std::binary_search(e.begin(), e.end(), g.y));
  }
}

TEST_CASE("subfield bricks grow by exactly q^{1/2}") {
  const auto f = FieldCtx::make(3, 2);
  for (unsigned n : {1u, 2u}) {
    std::vector<FieldVector> e;
    for (const auto& v : enumerate_space(FieldCtx::make(3), n)) e.push_back(v);  // F_3 indices embed in F_9
    const auto b = Brick::general(f, n, e, e, elems({0}));
    const auto ps = product_set(b, b);
    CHECK(ps.size() == 3 * e.size() * e.size());
  }
}

TEST_CASE("coset counting") {
  const auto f = FieldCtx::make(3);
  const auto h = Brick::full(f, 1).points();
  CHECK(coset_count(f, h) == 9);
  const auto flat = Brick::box(f, {all(f)}, {all(f)}, elems({0})).points();
  CHECK(coset_count(f, flat) == 0);
  const auto two = Brick::box(f, {elems({0})}, {elems({1})}, all(f)).points();
  CHECK(coset_count(f, two) == 1);
  CHECK(coset_count(f, std::vector<HeisPoint>{}) == 0);
}

TEST_CASE("growth hypothesis evaluation") {
  const std::uint64_t p = 5;
  const auto f = FieldCtx::make(p);
  const auto full = Brick::full(f, 2);
  const auto chk = shkredov_condition(full, p);
  CHECK(chk.lhs == doctest::Approx(25.0));
  CHECK(chk.rhs == doctest::Approx(std::pow(5.0, 1.75)));
  CHECK(chk.main_inequality);
  CHECK(chk.holds);

  const auto single = Brick::box(f, {elems({1}), elems({1})}, {elems({1}), elems({1})}, elems({0}));
  CHECK_FALSE(shkredov_condition(single, p).holds);

  const auto tall = Brick::box(f, {elems({1}), elems({1})}, {elems({1}), elems({1})}, elems({0, 1, 2}));
  CHECK_FALSE(shkredov_condition(tall, p).z_le_xy);

  CHECK_ERROR_KIND(shkredov_condition(Brick::full(f, 1), p), ErrorKind::OddDimension);
  const auto general = Brick::general(f, 2, enumerate_space(f, 2), enumerate_space(f, 2), elems({0}));
  CHECK_ERROR_KIND(shkredov_condition(general, p), ErrorKind::InvalidSpec);
}

TEST_CASE("pair limit stops oversized products") {
  const auto f = FieldCtx::make(7);
  const auto full = Brick::full(f, 1);
  Limits l;
  l.pair_visits = 1000;
  ScopedLimits guard(l);
  CHECK_ERROR_KIND(product_set(full, full), ErrorKind::LimitExceeded);
}

TEST_CASE("brick products match the pointwise product in dense and sparse regimes") {
  Rng rng(17);
  // q^(2n+1) small enough for the dense table, then far too large for it
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {9, 1}, {3, 2}, {101, 2}, {49, 3}}) {
    const auto f = FieldCtx::of_order(q);
    for (int t = 0; t < 3; ++t) {
      std::vector<std::vector<Elem>> xs, ys;
      for (unsigned i = 0; i < n; ++i) {
        xs.push_back(testing::random_scalars(f, rng, 1 + rng.below(3), false));
        ys.push_back(testing::random_scalars(f, rng, 1 + rng.below(3), false));
      }
      const auto b = Brick::box(f, xs, ys, testing::random_scalars(f, rng, 1 + rng.below(3), false));
      const auto pts = b.points();
      const auto ref = product_set(f, pts, pts);
      for (unsigned w : {1u, 4u}) {
        const auto got = product_set(b, b, w);
        CHECK(got.keys == ref.keys);
        CHECK(got.counts == ref.counts);
        CHECK(got.collision_energy == ref.collision_energy);
      }
    }
  }
}
