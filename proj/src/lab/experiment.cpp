#include "heislab/lab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "heislab/domain.hpp"
#include "heislab/energy.hpp"
#include "heislab/error.hpp"
#include "heislab/heisenberg.hpp"

namespace heislab::lab {

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all = {
      {"thm3", Ambient::Scalars, "(|A|^2)^(7/4)", "[A,A,0]^2 for A in F_q, small sets (|A| <= p^(2/3))"},
      {"thm4", Ambient::Scalars, "q*|A|^2", "[A,A,0]^2 for A in F_q, large sets (|A| >= q^(2/3))"},
      {"thm5", Ambient::Scalars, "K*q*|A|^2, K = |A|^3/E+(A)", "[A,A,0]^2 for A with small additive energy"},
      {"thm6", Ambient::Vectors, "q*|E|^2", "[E,E,0]^2 for E in F_q^n, |E| >= q^(n/2+1/4)"},
      {"thm8", Ambient::Plane, "(|E|^2)^(19/15)", "[E,E,0]^2 for E in F_p^2, p = 3 mod 4, with the dot-product set"},
      {"thm9", Ambient::Scalars, "(|A|^2)^(151/80)", "[A,A,0]^2 for multiplicative subgroups"},
      {"thm10", Ambient::Complex, "|A|^(29/8)", "[A,A,0]^2 for A in C (exact Gaussian rationals)"},
      {"bricks", Ambient::Bricks, "|[X,Y,Z]|/p", "full centre cosets inside a brick product"},
      {"sharpness", Ambient::Vectors, "q^(1/2)*|E|^2", "[E,E,0]^2 for subfield and subspace constructions"},
      {"eq11", Ambient::Scalars, "min{p^(1/2)*|A|^(5/2), p^(-1/2)*|A|^4}", "[A,A,0]^2 for |A| >= p^(1/2)"},
  };
  return all;
}

const SuiteInfo& find_suite(const std::string& name) {
  const std::string key = name == "thm1" ? "thm6" : name;
  for (const auto& s : suites())
    if (s.name == key) return s;
  fail(ErrorKind::InvalidSpec, "unknown suite '" + name + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string flag(const std::string& name, bool value) { return name + "=" + (value ? "1" : "0"); }

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ";" : "") + parts[i];
  return out;
}

std::string dec(const BigInt& v) { return to_decimal(v); }
std::string dec(std::uint64_t v) { return std::to_string(v); }

// Products of a brick with itself are at least |B|, S at least |B|^2, and
// Cauchy-Schwarz gives |B B| S >= |B|^4.
void sanity(std::uint64_t base, std::uint64_t product, const BigInt& s) {
  const BigInt b = big(base);
  require(big(product) >= b, ErrorKind::InvariantViolation, "product smaller than the brick");
  require(s >= b * b, ErrorKind::InvariantViolation, "S below the diagonal count");
  require(big(product) * s >= b * b * b * b, ErrorKind::InvariantViolation, "|product| S < |B|^4");
}

void set_power_bound(ExperimentRow& row, const BigInt& base, std::uint64_t num, std::uint64_t den) {
  row.bound_expr = "(" + dec(base) + ")^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
  row.predicted = std::pow(to_double(base), static_cast<double>(num) / static_cast<double>(den));
}

void fill_field(ExperimentRow& row, const FieldCtx& ctx) {
  row.domain = "F_" + std::to_string(ctx.q());
  row.p = ctx.p();
  row.k = ctx.k();
  row.q = ctx.q();
}

void scalar_cell(const SuiteInfo& suite, ExperimentRow& row, const FieldCtx& ctx, const SetSpec& spec, Rng& rng) {
  const auto a = gen_scalars(ctx, spec, rng);
  const FieldDomain dom(ctx);
  const std::span<const Elem> as(a);
  const auto h = h1_stats(dom, as);
  const std::uint64_t m = a.size();
  const BigInt q = big(ctx.q()), hsize = big(m) * big(m);
  row.set_size = m;
  row.product_size = big(h.size);
  row.S = h.S;
  row.energy_add = energy_add(dom, as);
  row.energy_mul = energy_mul(dom, as);
  row.numerator = big(h.size);
  if (m > 0) sanity(m * m, h.size, h.S);
  const bool prime = ctx.k() == 1;
  const BigInt m3 = big(m) * big(m) * big(m);

  if (suite.name == "thm3") {
    set_power_bound(row, hsize, 7, 4);
    row.hypotheses = join({flag("prime_field", prime), flag("A_le_p^(2/3)", m3 <= q * q)});
  } else if (suite.name == "thm4") {
    row.bound_expr = dec(q) + "*" + dec(hsize);
    row.predicted = to_double(q * hsize);
    row.hypotheses = join({flag("A_ge_q^(2/3)", m3 >= q * q)});
  } else if (suite.name == "thm5") {
    // K = |A|^3 / E+(A); |A| >= K^(1/3) q^(2/3) iff E+(A) >= q^2
    BigRat k(m3, m ? *row.energy_add : BigInt(1));
    k.canonicalize();
    row.bound_expr = "(" + k.get_str() + ")*" + dec(q) + "*" + dec(hsize);
    row.predicted = to_double(BigRat(k * BigRat(q * hsize)));
    row.hypotheses = join({flag("A_ge_K^(1/3)q^(2/3)", *row.energy_add >= q * q)});
    // min{|A|^5/q, q |A|^5 / E+(A)}
    const double a5 = std::pow(static_cast<double>(m), 5.0);
    const double alt = std::min(a5 / to_double(q), to_double(q) * a5 / std::max(1.0, to_double(*row.energy_add)));
    row.aux = join({"K=" + k.get_str(), "minbound=" + format_double(alt),
                    "minbound_ratio=" + format_double(alt > 0 ? static_cast<double>(h.size) / alt : 0)});
  } else if (suite.name == "thm9") {
    set_power_bound(row, hsize, 151, 80);
    bool closed = std::find(a.begin(), a.end(), ctx.zero()) == a.end();
    for (std::size_t i = 0; closed && i < a.size(); ++i)
      for (std::size_t j = 0; closed && j < a.size(); ++j) closed = std::binary_search(a.begin(), a.end(), ctx.mul(a[i], a[j]));
    const double limit = std::sqrt(to_double(q)) * std::log(to_double(q));
    row.hypotheses = join({flag("prime_field", prime), flag("subgroup", closed && m > 0),
                           flag("A_le_p^(1/2)log(p)", static_cast<double>(m) <= limit)});
  } else if (suite.name == "eq11") {
    // p^(1/2) H^(5/4) <= p^(-1/2) H^2 iff p^4 <= H^3
    const double qd = to_double(q), hd = to_double(hsize);
    if (q * q * q * q <= hsize * hsize * hsize) {
      row.bound_expr = "(" + dec(q) + ")^(1/2)*(" + dec(hsize) + ")^(5/4)";
      row.predicted = std::sqrt(qd) * std::pow(hd, 1.25);
    } else {
      row.bound_expr = "(" + dec(q) + ")^(-1/2)*(" + dec(hsize) + ")^2";
      row.predicted = hd * hd / std::sqrt(qd);
    }
    row.hypotheses = join({flag("prime_field", prime), flag("A_ge_p^(1/2)", hsize >= q)});
  }
}

void vector_cell(const SuiteInfo& suite, ExperimentRow& row, const FieldCtx& ctx, unsigned n, const SetSpec& spec,
                 Rng& rng) {
  const auto e = gen_vectors(ctx, n, spec, rng);
  const Brick brick = Brick::general(ctx, n, e, e, {ctx.zero()});
  const ProductSet ps = product_set(brick, brick);
  const std::uint64_t m = e.size();
  const BigInt q = big(ctx.q()), hsize = big(m) * big(m);
  row.set_size = m;
  row.product_size = big(ps.size());
  row.S = ps.collision_energy;
  row.numerator = big(ps.size());
  if (m > 0) sanity(m * m, ps.size(), ps.collision_energy);

  if (suite.name == "thm6") {
    row.bound_expr = dec(q) + "*" + dec(hsize);
    row.predicted = to_double(q * hsize);
    // |E| >= q^(n/2 + 1/4) iff |E|^4 >= q^(2n+1)
    row.hypotheses = join({flag("E_ge_q^(n/2+1/4)", hsize * hsize >= big_pow(ctx.q(), 2 * n + 1))});
  } else if (suite.name == "sharpness") {
    row.bound_expr = "(" + dec(q) + ")^(1/2)*" + dec(hsize);
    row.predicted = std::sqrt(to_double(q)) * to_double(hsize);
    // product inside [E, E, F_q]
    const HeisCodec& codec = ps.codec;
    const std::set<FieldVector> members(e.begin(), e.end());
    bool inside = true;
    for (std::size_t i = 0; inside && i < ps.keys.size(); ++i) {
      const HeisPoint g = codec.decode(ps.keys[i]);
      inside = members.count(g.x) && members.count(g.y);
    }
    row.hypotheses = join({flag("product_in_[E,E,F_q]", inside)});
  }
}

void plane_cell(ExperimentRow& row, const FieldCtx& ctx, const SetSpec& spec, Rng& rng) {
  const auto e = gen_vectors(ctx, 2, spec, rng);
  const Brick brick = Brick::general(ctx, 2, e, e, {ctx.zero()});
  const ProductSet ps = product_set(brick, brick);
  const std::uint64_t m = e.size();
  const BigInt q = big(ctx.q()), hsize = big(m) * big(m);
  row.n = 2;
  row.set_size = m;
  row.product_size = big(ps.size());
  row.S = ps.collision_energy;
  row.numerator = big(ps.size());
  if (m > 0) sanity(m * m, ps.size(), ps.collision_energy);
  set_power_bound(row, hsize, 19, 15);

  const FieldDomain dom(ctx);
  std::vector<Point2<FieldDomain>> pts;
  for (const auto& v : e) pts.push_back({v[0], v[1]});
  const auto pi = dot_product_set(dom, std::span<const Point2<FieldDomain>>(pts));
  row.dot_products = big(pi.values.size());
  const BigInt m5 = big_pow(m, 5), m15 = big_pow(m, 15), q8 = big_pow(ctx.q(), 8);
  const bool prime = ctx.k() == 1;
  row.hypotheses = join({flag("prime_field", prime), flag("p_3_mod_4", prime && ctx.p() % 4 == 3),
                         flag("E_le_p^(8/5)", m5 <= q8), flag("E_le_p^(8/15)", m15 <= q8)});
  const double pi_bound = std::pow(static_cast<double>(m), 8.0 / 15.0);
  row.aux = join({"pi_ratio=" + format_double(m ? static_cast<double>(pi.values.size()) / pi_bound : 0),
                  "pi_row_max=" + std::to_string(pi.max_row)});
}

void complex_cell(ExperimentRow& row, const SetSpec& spec, Rng& rng) {
  const auto a = gen_complex(spec, rng);
  const ComplexDomain dom;
  const std::span<const ComplexRational> as(a);
  const auto h = h1_stats(dom, as);
  const std::uint64_t m = a.size();
  row.domain = "C";
  row.set_size = m;
  row.product_size = big(h.size);
  row.S = h.S;
  row.energy_add = energy_add(dom, as);
  row.energy_mul = energy_mul(dom, as);
  row.numerator = big(h.size);
  if (m > 0) sanity(m * m, h.size, h.S);
  set_power_bound(row, big(m), 29, 8);
  row.hypotheses = join({flag("A_ge_2", m >= 2)});
  const double r72 = std::pow(static_cast<double>(m), 3.5);
  row.aux = join({"E_min=" + dec(std::min(*row.energy_add, *row.energy_mul)),
                  "ratio_7/2=" + format_double(m ? static_cast<double>(h.size) / r72 : 0)});
}

void brick_cell(ExperimentRow& row, const FieldCtx& ctx, unsigned n, const SetSpec& spec, Rng& rng) {
  const Brick brick = gen_brick(ctx, n, spec, rng);
  const ProductSet ps = product_set(brick, brick);
  const std::uint64_t cosets = coset_count(ps);
  row.set_size = brick.size();
  row.product_size = big(ps.size());
  row.S = ps.collision_energy;
  row.cosets = big(cosets);
  row.numerator = big(cosets);
  if (brick.size() > 0) sanity(brick.size(), ps.size(), ps.collision_energy);
  row.bound_expr = dec(brick.size()) + "/" + dec(std::uint64_t{ctx.p()});
  row.predicted = static_cast<double>(brick.size()) / ctx.p();

  // |[X,Y,Z]| > |H_n|^(3/4) iff |B|^4 > q^(3(2n+1))
  const BigInt b4 = big_pow(brick.size(), 4);
  std::vector<std::string> flags = {flag("prime_field", ctx.k() == 1),
                                    flag("B_gt_H^(3/4)", b4 > big_pow(ctx.q(), 3 * (2 * n + 1)))};
  if (brick.kind() == Brick::Kind::Box && n % 2 == 0) {
    const ShkredovCheck c = shkredov_condition(brick, ctx.p());
    flags.push_back(flag("growth_condition", c.main_inequality));
    flags.push_back(flag("Z_le_XY", c.z_le_xy));
    flags.push_back(flag("X_le_ZY", c.x_le_zy));
    flags.push_back(flag("Y_le_ZX", c.y_le_zx));
  }
  row.hypotheses = join(flags);
  row.aux = join({"union_of_cosets=" + std::string(cosets * ctx.q() == ps.size() ? "1" : "0")});
}

}  // namespace

ExperimentRow run_cell(const SuiteInfo& suite, const SweepConfig& config, std::uint64_t q, std::uint64_t size,
                       unsigned trial) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.suite = suite.name;
  row.n = config.n;
  row.family = config.family.to_string();
  row.size_param = size;
  row.trial = trial;
  row.seed = cell_seed(config.seed, q, size, trial);
  row.domain = suite.ambient == Ambient::Complex ? "C" : "F_" + std::to_string(q);
  row.q = q;
  try {
    Rng rng(row.seed);
    const SetSpec spec = size ? config.family.with_size(size) : config.family;
    if (suite.ambient == Ambient::Complex) {
      complex_cell(row, spec, rng);
    } else {
      const FieldCtx ctx = FieldCtx::of_order(q);
      fill_field(row, ctx);
      switch (suite.ambient) {
        case Ambient::Scalars: row.n = 1; scalar_cell(suite, row, ctx, spec, rng); break;
        case Ambient::Vectors: vector_cell(suite, row, ctx, config.n, spec, rng); break;
        case Ambient::Plane: plane_cell(row, ctx, spec, rng); break;
        case Ambient::Bricks: brick_cell(row, ctx, config.n, spec, rng); break;
        case Ambient::Complex: break;
      }
    }
    row.ratio = row.predicted > 0 ? to_double(row.numerator) / row.predicted : 0;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (config.timing)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<ExperimentRow> run_experiment(const SweepConfig& config) {
  const SuiteInfo& suite = find_suite(config.suite);
  struct Cell {
    std::uint64_t q, size;
    unsigned trial;
    auto operator<=>(const Cell&) const = default;
  };
  std::vector<std::uint64_t> fields = config.fields;
  if (suite.ambient == Ambient::Complex) fields = {0};
  std::vector<std::uint64_t> sizes = config.sizes.empty() ? std::vector<std::uint64_t>{0} : config.sizes;
  std::vector<Cell> cells;
  for (auto q : fields)
    for (auto s : sizes)
      for (unsigned t = 0; t < config.trials; ++t) cells.push_back({q, s, t});
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::vector<ExperimentRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
      rows[i] = run_cell(suite, config, cells[i].q, cells[i].size, cells[i].trial);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(cells.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace heislab::lab
