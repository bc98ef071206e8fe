#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "heislab/ffield.hpp"
#include "heislab/limits.hpp"
#include "check_error.hpp"
#include "random_sets.hpp"

using namespace heislab;
using heislab::testing::Rng;

namespace {

const std::vector<std::pair<std::uint64_t, unsigned>> kFields = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2},
                                                                 {3, 2}, {2, 3}, {5, 2}, {3, 3}, {2, 5}, {101, 1}};

}  // namespace

TEST_CASE("prime field arithmetic") {
  const auto f = FieldCtx::make(5);
  CHECK(f.q() == 5);
  CHECK(f.add(Elem{2}, Elem{4}) == Elem{1});
  CHECK(f.sub(Elem{1}, Elem{3}) == Elem{3});
  CHECK(f.mul(Elem{3}, Elem{4}) == Elem{2});
  CHECK(f.inv(Elem{2}) == Elem{3});
  CHECK(f.from_int(-1) == Elem{4});
  CHECK(f.from_int(17) == Elem{2});
  CHECK(f.pow(Elem{2}, -1) == Elem{3});
  CHECK(f.pow(Elem{0}, 0) == Elem{1});
  CHECK_ERROR_KIND(f.inv(Elem{0}), ErrorKind::DivisionByZero);
  CHECK_ERROR_KIND(f.pow(Elem{0}, -2), ErrorKind::DivisionByZero);
}

TEST_CASE("F_9 with modulus x^2 + 1") {
  const auto f = FieldCtx::make(3, 2);
  CHECK(f.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  const Elem t = f.from_coeffs(std::vector<std::uint32_t>{0, 1});
  CHECK(f.mul(t, t) == f.from_int(2));
  CHECK(f.trace(t) == 0);
  CHECK(std::abs(f.chi(t) - std::complex<double>(1, 0)) < 1e-12);
  CHECK(f.trace(f.one()) == 2);
  CHECK(f.format(t) == "(0;1)");
  CHECK(f.parse("(0;1)") == t);
  CHECK(f.parse("2") == f.from_int(2));
  CHECK_ERROR_KIND(f.parse("(0;3)"), ErrorKind::ParseError);
  CHECK(f.mul(t, f.inv(t)) == f.one());
}

TEST_CASE("default modulus is the lexicographically smallest irreducible") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 4}, {3, 3}}) {
    const auto m = find_irreducible(p, k);
    REQUIRE(m.size() == k + 1);
    CHECK(m.back() == 1);
    CHECK(is_irreducible(p, m));
    // every smaller monic polynomial is reducible
    std::uint64_t idx = 0, pw = 1;
    for (unsigned i = 0; i < k; ++i, pw *= p) idx += m[i] * pw;
    for (std::uint64_t j = 0; j < idx; ++j) {
      std::vector<std::uint32_t> c(k + 1, 0);
      std::uint64_t r = j;
      for (unsigned i = 0; i < k; ++i, r /= p) c[i] = static_cast<std::uint32_t>(r % p);
      c[k] = 1;
      CHECK_FALSE(is_irreducible(p, c));
    }
  }
  CHECK(find_irreducible(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("invalid field specifications") {
  CHECK_ERROR_KIND(FieldCtx::make(4, 1), ErrorKind::CompositeModulus);
  CHECK_ERROR_KIND(FieldCtx::make(1, 1), ErrorKind::CompositeModulus);
  CHECK_ERROR_KIND(FieldCtx::of_order(12), ErrorKind::CompositeModulus);
  // x^2 + 1 = (x + 2)(x + 3) over F_5
  CHECK_ERROR_KIND(FieldCtx::make(5, 2, std::vector<std::uint32_t>{1, 0, 1}), ErrorKind::ReducibleModulus);
  CHECK(FieldCtx::of_order(9) == FieldCtx::make(3, 2));
  CHECK(FieldCtx::of_order(7).q() == 7);
}

TEST_CASE("field limit is enforced") {
  Limits l;
  l.field_order = 100;
  ScopedLimits guard(l);
  CHECK_ERROR_KIND(FieldCtx::make(101), ErrorKind::LimitExceeded);
  CHECK(FieldCtx::make(97).q() == 97);
}

TEST_CASE("field axioms on random triples") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    Rng rng(p * 31 + k);
    for (int t = 0; t < 1000; ++t) {
      const Elem a = testing::random_elem(f, rng), b = testing::random_elem(f, rng), c = testing::random_elem(f, rng);
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.add(a, b) == f.add(b, a));
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.add(a, f.neg(a)) == f.zero());
      REQUIRE(f.mul(a, b) == f.mul_poly(a, b));
      if (a != f.zero()) REQUIRE(f.mul(a, f.inv(a)) == f.one());
    }
  }
}

TEST_CASE("Frobenius fixes every element") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    for (Elem a : f.elements()) REQUIRE(f.pow(a, f.q()) == a);
  }
}

TEST_CASE("generator has full order") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    std::set<std::uint32_t> seen;
    Elem g = f.one();
    for (std::uint32_t i = 0; i + 1 < f.q(); ++i, g = f.mul(g, f.generator())) seen.insert(g.v);
    CHECK(seen.size() == f.q() - 1);
  }
}

TEST_CASE("trace is additive and characters sum to zero") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    std::complex<double> sum = 0;
    for (Elem a : f.elements()) {
      sum += f.chi(a);
      REQUIRE(f.trace(a) < p);
    }
    CHECK(std::abs(sum) < 1e-9);
    Rng rng(k);
    for (int t = 0; t < 200; ++t) {
      const Elem a = testing::random_elem(f, rng), b = testing::random_elem(f, rng);
      REQUIRE(f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % p);
    }
    CHECK(std::abs(f.chi(f.zero()) - 1.0) < 1e-12);
  }
  const auto f5 = FieldCtx::make(5);
  for (Elem a : f5.elements()) CHECK(f5.trace(a) == a.v);
}

TEST_CASE("multiplicative subgroups") {
  const auto f7 = FieldCtx::make(7);
  CHECK(f7.mult_subgroup(3) == testing::elems({1, 2, 4}));
  CHECK(f7.mult_subgroup(1) == testing::elems({1}));
  CHECK(f7.mult_subgroup(6).size() == 6);
  CHECK_ERROR_KIND(f7.mult_subgroup(5), ErrorKind::NotADivisor);
  CHECK_ERROR_KIND(f7.mult_subgroup(0), ErrorKind::NotADivisor);
  const auto f9 = FieldCtx::make(3, 2);
  for (std::uint64_t d : {1, 2, 4, 8}) {
    const auto h = f9.mult_subgroup(d);
    REQUIRE(h.size() == d);
    for (Elem a : h)
      for (Elem b : h) CHECK(std::binary_search(h.begin(), h.end(), f9.mul(a, b)));
  }
}

TEST_CASE("vector codec and enumeration") {
  const auto f2 = FieldCtx::make(2);
  const auto one = enumerate_space(f2, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == testing::elems({0}));
  CHECK(one[1] == testing::elems({1}));
  const auto f3 = FieldCtx::make(3);
  const auto sp = enumerate_space(f3, 2);
  CHECK(sp.size() == 9);
  CHECK(std::is_sorted(sp.begin(), sp.end()));
  const VectorCodec codec(f3, 2);
  for (std::uint64_t i = 0; i < codec.size(); ++i) CHECK(codec.encode(codec.decode(i)) == i);
  CHECK(codec.encode(testing::elems({1, 0})) == 3);
  CHECK(FieldCtx::make(3, 2).elements().size() == 9);

  Limits l;
  l.vector_space = 100;
  ScopedLimits guard(l);
  CHECK_ERROR_KIND(enumerate_space(f3, 5), ErrorKind::LimitExceeded);
}

TEST_CASE("vector operations") {
  const auto f = FieldCtx::make(5);
  const auto x = testing::elems({1, 2}), y = testing::elems({3, 4});
  CHECK(dot(f, x, y) == Elem{1});
  CHECK(vec_add(f, x, y) == testing::elems({4, 1}));
  CHECK(vec_sub(f, x, y) == testing::elems({3, 3}));
  CHECK(vec_scale(f, Elem{2}, x) == testing::elems({2, 4}));
  CHECK_ERROR_KIND(dot(f, x, testing::elems({1})), ErrorKind::DimensionMismatch);
}

TEST_CASE("row operations match elementwise arithmetic") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    Rng rng(p + k);
    std::vector<Elem> b(37), sum(37), prod(37);
    for (auto& e : b) e = testing::random_elem(f, rng);
    const Elem a = testing::random_elem(f, rng);
    f.add_row(a, b, sum);
    f.mul_row(a, b, prod);
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(sum[i] == f.add(a, b[i]));
      CHECK(prod[i] == f.mul(a, b[i]));
    }
  }
}

TEST_CASE("format and parse round-trip") {
  for (auto [p, k] : kFields) {
    const auto f = FieldCtx::make(p, k);
    for (Elem a : f.elements()) REQUIRE(f.parse(f.format(a)) == a);
  }
  CHECK(FieldCtx::make(5).parse("7") == Elem{2});
  CHECK_ERROR_KIND(FieldCtx::make(5).parse("x"), ErrorKind::ParseError);
}

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}
