#include <doctest.h>

#include "heislab/energy.hpp"
#include "heislab/heisenberg.hpp"
#include "heislab/limits.hpp"
#include "heislab/oracles.hpp"
#include "check_error.hpp"
#include "random_sets.hpp"

using namespace heislab;
using heislab::testing::elems;
using heislab::testing::Rng;

namespace {

std::vector<ComplexRational> cr(std::initializer_list<const char*> items) {
  std::vector<ComplexRational> out;
  for (auto s : items) out.push_back(ComplexRational::parse(s));
  return out;
}

std::vector<ComplexRational> range(long lo, long hi) {
  std::vector<ComplexRational> out;
  for (long i = lo; i <= hi; ++i) out.emplace_back(i);
  return out;
}

// [A, A, 0] as group elements of H_1.
std::vector<HeisPoint> flat_brick(std::span<const Elem> a) {
  std::vector<HeisPoint> out;
  for (Elem x : a)
    for (Elem y : a) out.push_back({{x}, {y}, Elem{0}});
  return out;
}

}  // namespace

TEST_CASE("energy examples") {
  const ComplexDomain c;
  CHECK(energy_add(c, std::span<const ComplexRational>(range(0, 1))) == 6);
  CHECK(energy_add(c, std::span<const ComplexRational>(range(5, 5))) == 1);
  const FieldDomain f7(FieldCtx::make(7));
  CHECK(energy_mul(f7, std::span<const Elem>(elems({1, 2}))) == 6);
  CHECK(energy_mul(f7, std::span<const Elem>(elems({1, 2, 4}))) == 27);
  CHECK(energy_add(f7, std::span<const Elem>(elems({}))) == 0);
}

TEST_CASE("additive energy of intervals") {
  const ComplexDomain c;
  for (long n = 1; n <= 50; ++n) {
    const auto a = range(0, n - 1);
    CHECK(energy_add(c, std::span<const ComplexRational>(a)) == (2 * n * n * n + n) / 3);
  }
}

TEST_CASE("multiplicative energy of subgroups") {
  for (std::uint64_t p : {7, 13, 31}) {
    const FieldDomain d(FieldCtx::make(p));
    for (std::uint64_t k = 1; k < p; ++k) {
      if ((p - 1) % k) continue;
      const auto h = d.field().mult_subgroup(k);
      CHECK(energy_mul(d, std::span<const Elem>(h)) == big_pow(k, 3));
    }
  }
}

TEST_CASE("energies match the quadruple oracle") {
  Rng rng(9);
  for (std::uint64_t q : {5, 7, 9, 11, 16}) {
    const FieldDomain d(FieldCtx::of_order(q));
    for (int t = 0; t < 5; ++t) {
      const auto a = testing::random_scalars(d.field(), rng, 1 + rng.below(std::min<std::uint64_t>(q - 1, 12)));
      const std::span<const Elem> s(a);
      const BigInt ea = energy_add(d, s), em = energy_mul(d, s);
      CHECK(ea == big(oracle::energy_add(d, s)));
      CHECK(em == big(oracle::energy_mul(d, s)));
      const BigInt n = big(a.size());
      CHECK(ea >= n * n);
      CHECK(ea <= n * n * n);
    }
  }
  for (int t = 0; t < 5; ++t) {
    const ComplexDomain c;
    const auto a = testing::random_gaussian(rng, 1 + rng.below(8));
    CHECK(energy_mul(c, std::span<const ComplexRational>(a)) ==
          big(oracle::energy_mul(c, std::span<const ComplexRational>(a))));
  }
}

TEST_CASE("dot product sets") {
  const FieldDomain d(FieldCtx::make(3));
  using P = Point2<FieldDomain>;
  CHECK(dot_product_set(d, std::span<const P>(std::vector<P>{{Elem{1}, Elem{0}}})).values == elems({1}));
  std::vector<P> plane;
  for (Elem x : d.field().elements())
    for (Elem y : d.field().elements()) plane.push_back({x, y});
  const auto all = dot_product_set(d, std::span<const P>(plane));
  CHECK(all.values == elems({0, 1, 2}));
  CHECK(all.max_row == 3);
}

TEST_CASE("S examples") {
  const FieldDomain f5(FieldCtx::make(5));
  CHECK(quad_count_S(f5, std::span<const Elem>(elems({3}))) == 1);
  const auto a = elems({1, 2});
  CHECK(quad_count_S(f5, std::span<const Elem>(a)) == big(oracle::S_full(f5, std::span<const Elem>(a))));
  const ComplexDomain c;
  CHECK(h1_product_size(c, std::span<const ComplexRational>(range(1, 1))) == 1);
  CHECK(h1_product_size(c, std::span<const ComplexRational>(range(1, 2))) == 15);
}

TEST_CASE("S agrees with the tuple system and with the group") {
  Rng rng(21);
  for (std::uint64_t p : {5, 7, 11, 13}) {
    const FieldDomain d(FieldCtx::make(p));
    for (int t = 0; t < 4; ++t) {
      const auto a = testing::random_scalars(d.field(), rng, 1 + rng.below(std::min<std::uint64_t>(p, 8)), false);
      const std::span<const Elem> s(a);
      const auto stats = h1_stats(d, s);
      CHECK(stats.S == big(oracle::S_tuples(d, s)));
      CHECK(stats.size == oracle::h1_size(d, s));
      const auto brick = flat_brick(a);
      const auto ps = product_set(d.field(), brick, brick);
      CHECK(stats.S == ps.collision_energy);
      CHECK(stats.size == ps.size());
      const BigInt n = big(a.size());
      CHECK(big(stats.size) * stats.S >= n * n * n * n * n * n * n * n);
      if (a.size() <= 3) CHECK(stats.S == big(oracle::S_full(d, s)));
    }
  }
}

TEST_CASE("S for vectors") {
  const auto f = FieldCtx::make(3);
  const auto plane = enumerate_space(f, 2);
  CHECK(quad_count_S_vectors(f, plane) == big(oracle::vector_S_tuples(f, plane)));
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto e = testing::random_vectors(FieldCtx::make(5), 2, rng, 1 + rng.below(8));
    CHECK(quad_count_S_vectors(FieldCtx::make(5), e) == big(oracle::vector_S_tuples(FieldCtx::make(5), e)));
  }
}

TEST_CASE("S, X and the reduction inequality") {
  const FieldDomain f7(FieldCtx::make(7));
  CHECK(x_count(f7, std::span<const Elem>(elems({3}))) == 0);
  Rng rng(33);
  for (std::uint64_t p : {7, 11, 13}) {
    const FieldDomain d(FieldCtx::make(p));
    for (int t = 0; t < 4; ++t) {
      const auto a = testing::random_scalars(d.field(), rng, 1 + rng.below(std::min<std::uint64_t>(p - 1, 8)));
      const std::span<const Elem> s(a);
      const BigInt x = x_count(d, s);
      CHECK(x == big(oracle::X_tuples(d, s)));
      const BigInt n = big(a.size());
      CHECK(quad_count_S(d, s) <= x + n * n * n * n);
    }
  }
  for (int t = 0; t < 4; ++t) {
    const ComplexDomain c;
    const auto a = testing::random_gaussian(rng, 1 + rng.below(6));
    const std::span<const ComplexRational> s(a);
    CHECK(x_count(c, s) == big(oracle::X_tuples(c, s)));
    const BigInt n = big(a.size());
    CHECK(quad_count_S(c, s) <= x_count(c, s) + n * n * n * n);
  }
  CHECK_ERROR_KIND(x_count(f7, std::span<const Elem>(elems({0, 1}))), ErrorKind::ZeroInSet);
}

TEST_CASE("six-tuple count M") {
  const ComplexDomain c;
  const auto two = cr({"1", "2"});
  const auto m = m_count(c, std::span<const ComplexRational>(two));
  CHECK(m.count == big(oracle::M_tuples(c, std::span<const ComplexRational>(two))));
  CHECK(m.energy_mul == 6);
  CHECK(m.bound == doctest::Approx(2 * std::sqrt(6.0) * 8));
  const auto three = cr({"1", "i", "2"});
  CHECK(m_count(c, std::span<const ComplexRational>(three)).count ==
        big(oracle::M_tuples(c, std::span<const ComplexRational>(three))));
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto a = testing::random_gaussian(rng, 2 + rng.below(5));
    const auto r = m_count(c, std::span<const ComplexRational>(a));
    CHECK(r.count == big(oracle::M_tuples(c, std::span<const ComplexRational>(a))));
    CHECK(r.count.get_d() <= r.bound * (1 + 1e-12));
  }
  CHECK_ERROR_KIND(m_count(c, std::span<const ComplexRational>(cr({"1"}))), ErrorKind::SetTooSmall);
  CHECK_ERROR_KIND(m_count(c, std::span<const ComplexRational>(cr({"0", "1"}))), ErrorKind::ZeroInSet);
}

TEST_CASE("integer intervals reach the complex growth threshold") {
  const ComplexDomain c;
  const auto a = range(1, 10);
  const auto size = h1_product_size(c, std::span<const ComplexRational>(a));
  CHECK(size == 6729);
  CHECK(size == oracle::h1_size(c, std::span<const ComplexRational>(a)));
  CHECK(static_cast<double>(size) >= std::pow(10.0, 3.5));
}

TEST_CASE("duplicates are ignored and limits apply") {
  const FieldDomain f7(FieldCtx::make(7));
  CHECK(energy_add(f7, std::span<const Elem>(elems({1, 1, 2}))) == energy_add(f7, std::span<const Elem>(elems({1, 2}))));
  Limits l;
  l.pair_visits = 100;
  ScopedLimits guard(l);
  CHECK_ERROR_KIND(h1_stats(f7, std::span<const Elem>(elems({1, 2, 3, 4}))), ErrorKind::LimitExceeded);
}
