#include "heislab/lab/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "heislab/domain.hpp"
#include "heislab/energy.hpp"
#include "heislab/error.hpp"
#include "heislab/heisenberg.hpp"
#include "heislab/incidence.hpp"
#include "heislab/kernels.hpp"
#include "heislab/lab/rng.hpp"
#include "heislab/oracles.hpp"
#include "heislab/spectral.hpp"

namespace heislab::lab {

namespace {

// Each check returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

class Runner {
 public:
  explicit Runner(std::string suite) { result_.suite = std::move(suite); }

  void run(const std::string& name, const Check& check) {
    CheckResult r{name, false, ""};
    try {
      r.detail = check();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    result_.checks.push_back(std::move(r));
  }

  VerifyResult take() { return std::move(result_); }

 private:
  VerifyResult result_;
};

template <class A, class B>
std::string mismatch(const std::string& what, const A& got, const B& want) {
  std::ostringstream s;
  s << what << ": " << got << " != " << want;
  return s.str();
}

std::vector<Elem> random_scalars(const FieldCtx& ctx, Rng& rng, std::uint64_t size, bool nonzero) {
  std::vector<Elem> out;
  const std::uint64_t lo = nonzero ? 1 : 0;
  for (auto v : rng.sample(ctx.q() - lo, size)) out.push_back(Elem{static_cast<std::uint32_t>(v + lo)});
  return out;
}

std::vector<FieldVector> random_vectors(const FieldCtx& ctx, unsigned n, Rng& rng, std::uint64_t size) {
  const VectorCodec codec(ctx, n);
  std::vector<FieldVector> out;
  for (auto i : rng.sample(codec.size(), size)) out.push_back(codec.decode(i));
  return out;
}

HeisPoint random_point(const FieldCtx& ctx, unsigned n, Rng& rng) {
  HeisPoint g{FieldVector(n), FieldVector(n), Elem{static_cast<std::uint32_t>(rng.below(ctx.q()))}};
  for (unsigned i = 0; i < n; ++i) {
    g.x[i] = Elem{static_cast<std::uint32_t>(rng.below(ctx.q()))};
    g.y[i] = Elem{static_cast<std::uint32_t>(rng.below(ctx.q()))};
  }
  return g;
}

std::vector<ComplexRational> random_gaussian(Rng& rng, std::uint64_t size, std::int64_t r) {
  std::vector<ComplexRational> grid;
  for (std::int64_t a = -r; a <= r; ++a)
    for (std::int64_t b = -r; b <= r; ++b)
      if (a || b) grid.emplace_back(BigRat(static_cast<long>(a)), BigRat(static_cast<long>(b), 2));
  std::vector<ComplexRational> out;
  for (auto i : rng.sample(grid.size(), size)) out.push_back(grid[i]);
  return out;
}

VerifyResult core(std::uint64_t seed) {
  Runner run("core");
  Rng rng(seed);

  run.run("field axioms", [&]() -> std::string {
    for (std::uint64_t q : {5u, 7u, 9u, 16u, 25u, 27u, 81u, 101u}) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      for (int t = 0; t < 1000; ++t) {
        const Elem a{static_cast<std::uint32_t>(rng.below(q))}, b{static_cast<std::uint32_t>(rng.below(q))},
            c{static_cast<std::uint32_t>(rng.below(q))};
        if (ctx.add(ctx.add(a, b), c) != ctx.add(a, ctx.add(b, c))) return "associativity of + in F_" + std::to_string(q);
        if (ctx.mul(a, ctx.add(b, c)) != ctx.add(ctx.mul(a, b), ctx.mul(a, c))) return "distributivity in F_" + std::to_string(q);
        if (ctx.mul(a, b) != ctx.mul_poly(a, b)) return "table product disagrees with polynomial product in F_" + std::to_string(q);
        if (a != ctx.zero() && ctx.mul(a, ctx.inv(a)) != ctx.one()) return "inverse in F_" + std::to_string(q);
      }
    }
    return "";
  });

  run.run("frobenius", [&]() -> std::string {
    for (std::uint64_t q : {2u, 3u, 4u, 8u, 9u, 49u, 125u, 4096u}) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      for (Elem a : ctx.elements()) {
        if (ctx.pow(a, q) != a) return "a^q != a in F_" + std::to_string(q);
        if (a != ctx.zero() && ctx.pow(a, q - 1) != ctx.one()) return "a^(q-1) != 1 in F_" + std::to_string(q);
      }
    }
    return "";
  });

  run.run("character orthogonality", [&]() -> std::string {
    for (std::uint64_t q : {3u, 7u, 9u, 16u, 27u}) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      for (Elem s : ctx.elements()) {
        if (s == ctx.zero()) continue;
        std::complex<double> acc = 0;
        for (Elem a : ctx.elements()) acc += ctx.chi(ctx.mul(s, a));
        if (std::abs(acc) > 1e-9) return "nonzero character sum in F_" + std::to_string(q);
      }
    }
    return "";
  });

  run.run("subgroup closure", [&]() -> std::string {
    for (std::uint64_t p : {7u, 13u, 31u}) {
      const FieldCtx ctx = FieldCtx::make(p);
      for (std::uint64_t d = 1; d < p; ++d) {
        if ((p - 1) % d) continue;
        const auto h = ctx.mult_subgroup(d);
        if (h.size() != d) return mismatch("subgroup size", h.size(), d);
        for (Elem a : h)
          for (Elem b : h)
            if (!std::binary_search(h.begin(), h.end(), ctx.mul(a, b))) return "subgroup not closed";
      }
    }
    return "";
  });

  run.run("group law vs matrices", [&]() -> std::string {
    const std::pair<std::uint64_t, unsigned> cases[] = {{3, 1}, {5, 1}, {9, 1}, {3, 2}};
    for (auto [q, n] : cases) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      for (int t = 0; t < 1000; ++t) {
        const HeisPoint a = random_point(ctx, n, rng), b = random_point(ctx, n, rng), c = random_point(ctx, n, rng);
        if (heis_mul(ctx, a, b) != oracle::matrix_mul(ctx, a, b)) return "closed form disagrees with matrices";
        if (heis_mul(ctx, heis_mul(ctx, a, b), c) != heis_mul(ctx, a, heis_mul(ctx, b, c))) return "associativity";
        if (heis_mul(ctx, a, heis_inv(ctx, a)) != heis_identity(n)) return "inverse";
        if (heis_mul(ctx, heis_identity(n), a) != a) return "identity";
      }
    }
    return "";
  });

  run.run("full brick closure", [&]() -> std::string {
    for (std::uint64_t p : {3u, 5u, 7u}) {
      const FieldCtx ctx = FieldCtx::make(p);
      const Brick full = Brick::full(ctx, 1);
      const ProductSet ps = product_set(full, full);
      if (ps.size() != p * p * p) return mismatch("|H_1|", ps.size(), p * p * p);
      if (coset_count(ps) != p * p) return mismatch("cosets", coset_count(ps), p * p);
    }
    return "";
  });

  run.run("energy closed forms", [&]() -> std::string {
    const FieldCtx ctx = FieldCtx::make(101);
    const FieldDomain dom(ctx);
    for (std::uint64_t n = 1; n <= 50; ++n) {
      std::vector<Elem> a;
      for (std::uint64_t i = 0; i < n; ++i) a.push_back(Elem{static_cast<std::uint32_t>(i)});
      const BigInt e = energy_add(dom, std::span<const Elem>(a));
      const BigInt want = big((2 * n * n * n + n) / 3);
      if (e != want) return mismatch("E+({0..N-1})", e, want);
    }
    for (std::uint64_t p : {7u, 13u, 31u}) {
      const FieldCtx f = FieldCtx::make(p);
      const FieldDomain d(f);
      for (std::uint64_t k = 1; k < p; ++k) {
        if ((p - 1) % k) continue;
        const auto h = f.mult_subgroup(k);
        const BigInt e = energy_mul(d, std::span<const Elem>(h));
        if (e != big(k * k * k)) return mismatch("E*(subgroup)", e, k * k * k);
      }
    }
    return "";
  });

  run.run("kernel equivalence", [&]() -> std::string {
    const std::uint32_t p = 1048573;
    std::vector<std::uint32_t> b(1000), r1(1000), r2(1000);
    for (auto& x : b) x = static_cast<std::uint32_t>(rng.below(p));
    const std::uint32_t a = static_cast<std::uint32_t>(rng.below(p));
    kernels::scalar::mul_mod_row(a, b, r1, p);
    kernels::mul_mod_row(a, b, r2, p);
    if (r1 != r2) return "mul_mod_row differs from the scalar reference";
    kernels::scalar::add_mod_row(a, b, r1, p);
    kernels::add_mod_row(a, b, r2, p);
    if (r1 != r2) return "add_mod_row differs from the scalar reference";
    if (kernels::scalar::sum_squares(b) != kernels::sum_squares(b)) return "sum_squares differs";
    return "";
  });

  return run.take();
}

VerifyResult spectral(std::uint64_t seed) {
  Runner run("spectral");
  Rng rng(seed);

  run.run("spectral triple count", [&]() -> std::string {
    const std::pair<std::uint64_t, unsigned> cases[] = {{5, 1}, {7, 1}, {3, 2}, {9, 1}};
    for (auto [q, n] : cases) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      const std::uint64_t space = VectorCodec(ctx, n).size();
      for (int t = 0; t < 50; ++t) {
        const auto e = random_vectors(ctx, n, rng, 1 + rng.below(space));
        const BigInt direct = triple_count_direct(ctx, e);
        const double spec = triple_count_spectral(ctx, e);
        if (std::abs(spec - to_double(direct)) >= 0.5) return mismatch("spectral vs direct", spec, direct);
        if (triple_count_histogram(ctx, e) != triple_count_cubic(ctx, e)) return "histogram vs cubic";
        if (direct != big(oracle::triple_count(ctx, e))) return mismatch("direct vs oracle", direct, oracle::triple_count(ctx, e));
      }
    }
    const FieldCtx f3 = FieldCtx::make(3);
    const auto all = enumerate_space(f3, 1);
    if (triple_count_direct(f3, all) != 15) return "full F_3 triple count";
    if (std::llround(triple_count_spectral(f3, all)) != 15) return "full F_3 spectral count";
    return "";
  });

  run.run("plancherel and inversion", [&]() -> std::string {
    const std::pair<std::uint64_t, unsigned> cases[] = {{7, 1}, {3, 2}, {9, 1}, {4, 2}};
    for (auto [q, n] : cases) {
      const FieldCtx ctx = FieldCtx::of_order(q);
      const auto e = random_vectors(ctx, n, rng, 1 + rng.below(VectorCodec(ctx, n).size()));
      const DensityTable f = DensityTable::indicator(ctx, n, e);
      const DensityTable fh = fourier_transform(f);
      const double lhs = fh.squared_norm(), rhs = f.squared_norm() / std::pow(double(q), n);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, rhs)) return mismatch("plancherel", lhs, rhs);
      const DensityTable back = inverse_fourier_transform(fh);
      for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(back[i] - f[i]) > 1e-9) return "inverse transform does not recover f";
    }
    return "";
  });

  run.run("bilinear count bound", [&]() -> std::string {
    const FieldCtx ctx = FieldCtx::make(5);
    for (int t = 0; t < 100; ++t) {
      LiftedMultiset a(ctx, 1), b(ctx, 1);
      for (auto* m : {&a, &b}) {
        const auto pts = random_vectors(ctx, 3, rng, 1 + rng.below(40));
        for (const auto& v : pts) m->add(std::span<const Elem>(v).first(2), v[2], 1 + rng.below(3));
      }
      const BilinearCount res = bilinear_count_N(a, b);  // asserts the bound
      if (res.count != oracle::bilinear_pairs(a, b)) return "N disagrees with pair enumeration";
    }
    LiftedMultiset full_a(ctx, 1), full_b(ctx, 1);
    for (const auto& v : enumerate_space(ctx, 3)) {
      full_a.add(std::span<const Elem>(v).first(2), v[2]);
      full_b.add(std::span<const Elem>(v).first(2), v[2]);
    }
    const BilinearCount full = bilinear_count_N(full_a, full_b);
    if (full.count != big_pow(5, 5)) return mismatch("full-space N", full.count, big_pow(5, 5));
    if (BigRat(full.count) != full.main_term) return "full-space N differs from the main term";
    return "";
  });

  run.run("lifted system", [&]() -> std::string {
    const FieldCtx ctx = FieldCtx::make(5);
    for (int t = 0; t < 20; ++t) {
      const auto e = random_vectors(ctx, 2, rng, 1 + rng.below(6));
      const LiftedPair lp = lift_vector_system(ctx, e);
      const BilinearCount res = bilinear_count_N(lp.a, lp.b);
      if (res.count != big(oracle::lifted_system_count(ctx, e))) return "N differs from the E^6 count";
      const BigInt bound = big(e.size()) * triple_count_direct(ctx, e);
      if (lp.a.second_moment() > bound || lp.b.second_moment() > bound) return "second moment exceeds |E| T";
    }
    return "";
  });

  return run.take();
}

VerifyResult reduction(std::uint64_t seed) {
  Runner run("reduction");
  Rng rng(seed);
  const FieldCtx ctx = FieldCtx::make(11);
  const FieldDomain dom(ctx);

  run.run("S, X and the line family", [&]() -> std::string {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_scalars(ctx, rng, 1 + rng.below(8), true);
      const std::span<const Elem> as(a);
      const auto h = h1_stats(dom, as);
      const std::uint64_t m = a.size(), m4 = m * m * m * m;
      if (h.S != big(oracle::S_tuples(dom, as))) return mismatch("S vs tuple system", h.S, oracle::S_tuples(dom, as));
      std::vector<HeisPoint> brick;
      for (Elem x : a)
        for (Elem y : a) brick.push_back({{x}, {y}, ctx.zero()});
      const ProductSet ps = product_set(ctx, brick, brick);
      if (ps.collision_energy != h.S) return "S vs collision energy of the product set";
      if (ps.size() != h.size) return "product size vs Heisenberg product set";
      if (big(h.size) * h.S < big(m4) * big(m4)) return "Cauchy-Schwarz";
      const BigInt x = x_count(dom, as);
      if (x != big(oracle::X_tuples(dom, as))) return mismatch("X vs tuple system", x, oracle::X_tuples(dom, as));
      if (h.S > x + big(m4)) return "S > X + |A|^4";
      const auto lines = reduction_lines(dom, as);
      const auto grid = PointSet2<FieldDomain>::grid(as);
      if (incidence_count(dom, grid, lines).incidences != x) return "X != I(A x A, L)";
      const BigInt ep = energy_add(dom, as);
      if (lines.total() != (ep - big(m * m)) * big(m)) return "|L| != (E+ - |A|^2) |A|";
      if (lines.total() > ep * big(m)) return "|L| > E+ |A|";
      dyadic_buckets(lines);
    }
    return "";
  });

  run.run("vector S", [&]() -> std::string {
    const FieldCtx f3 = FieldCtx::make(3);
    const auto full = enumerate_space(f3, 2);
    if (quad_count_S_vectors(f3, full) != big(oracle::vector_S_tuples(f3, full))) return "E = F_3^2";
    const FieldCtx f5 = FieldCtx::make(5);
    for (int t = 0; t < 10; ++t) {
      const auto e = random_vectors(f5, 2, rng, 1 + rng.below(6));
      const Brick b = Brick::general(f5, 2, e, e, {f5.zero()});
      const ProductSet ps = product_set(b, b);
      const BigInt s = quad_count_S_vectors(f5, e);
      if (s != big(oracle::vector_S_tuples(f5, e))) return "random E in F_5^2";
      if (s != ps.collision_energy) return "vector S vs collision energy";
      if (ps.size() != oracle::vector_h1_size(f5, e)) return "vector product size";
    }
    return "";
  });

  run.run("eight-variable system", [&]() -> std::string {
    const FieldCtx f5 = FieldCtx::make(5);
    const FieldDomain d5(f5);
    for (int t = 0; t < 5; ++t) {
      const auto a = random_scalars(f5, rng, 1 + rng.below(3), false);
      if (quad_count_S(d5, std::span<const Elem>(a)) != big(oracle::S_full(d5, std::span<const Elem>(a)))) return "S vs A^8";
    }
    return "";
  });

  return run.take();
}

VerifyResult incidence(std::uint64_t seed) {
  Runner run("incidence");
  Rng rng(seed);

  run.run("grid identity", [&]() -> std::string {
    for (std::uint64_t p : {3u, 5u}) {
      const FieldDomain dom(FieldCtx::make(p));
      const auto lines = oracle::all_lines(dom);
      const auto elems = dom.field().elements();
      const auto grid = PointSet2<FieldDomain>::grid(std::span<const Elem>(elems));
      const auto inc = incidence_count(dom, grid, lines);
      if (inc.incidences != big(p * p * p + p * p)) return mismatch("I(F_p^2, all lines)", inc.incidences, p * p * p + p * p);
      const auto cubes = sum_cubes(dom, grid, lines);
      if (cubes.cubes != big((p * p + p) * p * p * p)) return "sum of cubes over all lines";
    }
    return "";
  });

  run.run("incidences vs double loop", [&]() -> std::string {
    const FieldDomain dom(FieldCtx::make(7));
    const auto all = oracle::all_lines(dom).entries();
    for (int t = 0; t < 20; ++t) {
      std::vector<Point2<FieldDomain>> pts;
      for (auto i : rng.sample(49, 1 + rng.below(30)))
        pts.push_back({Elem{static_cast<std::uint32_t>(i / 7)}, Elem{static_cast<std::uint32_t>(i % 7)}});
      WeightedLineSet<FieldDomain> lines;
      for (auto i : rng.sample(all.size(), 1 + rng.below(40))) lines.add(all[i].first, 1 + (t % 2) * rng.below(3));
      const PointSet2<FieldDomain> ps(pts);
      if (incidence_count(dom, ps, lines).incidences != oracle::incidences(dom, std::span<const Point2<FieldDomain>>(pts), lines))
        return "incidence count";
      sum_cubes(dom, ps, lines);  // checks Hoelder on unweighted sets
      dyadic_buckets(lines);
    }
    return "";
  });

  run.run("rich lines", [&]() -> std::string {
    const ComplexDomain dom;
    const std::vector<ComplexRational> a = {1, 2, 3};
    const auto grid = PointSet2<ComplexDomain>::grid(std::span<const ComplexRational>(a));
    const auto rich = rich_lines(dom, grid, 3);
    if (rich.lines.size() != 8) return mismatch("3-rich lines of {1,2,3}^2", rich.lines.size(), 8);
    return "";
  });

  run.run("collinear triples", [&]() -> std::string {
    const FieldDomain dom(FieldCtx::make(7));
    for (int t = 0; t < 10; ++t) {
      const auto a = random_scalars(dom.field(), rng, 1 + rng.below(4), false);
      const auto ct = collinear_triples(dom, std::span<const Elem>(a));
      if (ct.ordered != big(oracle::collinear_det(dom, std::span<const Elem>(a)))) return "random A in F_7";
    }
    const ComplexDomain cdom;
    const std::vector<ComplexRational> two = {0, 1};
    if (collinear_triples(cdom, std::span<const ComplexRational>(two)).ordered !=
        big(oracle::collinear_det(cdom, std::span<const ComplexRational>(two))))
      return "{0, 1} in Q";
    return "";
  });

  return run.take();
}

VerifyResult complex_suite(std::uint64_t seed) {
  Runner run("complex");
  Rng rng(seed);
  const ComplexDomain dom;

  run.run("six-tuple count", [&]() -> std::string {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_gaussian(rng, 2 + rng.below(5), 2);
      const std::span<const ComplexRational> as(a);
      const MCount m = m_count(dom, as);  // asserts the bound
      if (m.count != big(oracle::M_tuples(dom, as))) return "M vs tuple enumeration";
    }
    return "";
  });

  run.run("product size and S", [&]() -> std::string {
    for (int t = 0; t < 10; ++t) {
      const auto a = random_gaussian(rng, 1 + rng.below(5), 2);
      const std::span<const ComplexRational> as(a);
      const auto h = h1_stats(dom, as);
      if (h.size != oracle::h1_size(dom, as)) return "product size";
      if (h.S != big(oracle::S_tuples(dom, as))) return "S";
      if (x_count(dom, as) != big(oracle::X_tuples(dom, as))) return "X";
    }
    std::vector<ComplexRational> interval;
    for (long i = 1; i <= 10; ++i) interval.emplace_back(i);
    if (h1_product_size(dom, std::span<const ComplexRational>(interval)) != 6729) return "{1..10}";
    return "";
  });

  run.run("energies", [&]() -> std::string {
    for (int t = 0; t < 10; ++t) {
      const auto a = random_gaussian(rng, 1 + rng.below(6), 3);
      const std::span<const ComplexRational> as(a);
      if (energy_add(dom, as) != big(oracle::energy_add(dom, as))) return "E+";
      if (energy_mul(dom, as) != big(oracle::energy_mul(dom, as))) return "E*";
    }
    return "";
  });

  return run.take();
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"core", "spectral", "reduction", "incidence", "complex"};
  return names;
}

VerifyResult verify_suite(const std::string& name, std::uint64_t seed) {
  if (name == "core") return core(seed);
  if (name == "spectral") return spectral(seed);
  if (name == "reduction") return reduction(seed);
  if (name == "incidence") return incidence(seed);
  if (name == "complex") return complex_suite(seed);
  fail(ErrorKind::InvalidSpec, "unknown verify suite '" + name + "'");
}

}  // namespace heislab::lab
