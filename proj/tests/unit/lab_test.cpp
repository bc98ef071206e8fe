#include <doctest.h>

#include <set>
#include <sstream>

#include "heislab/lab/experiment.hpp"
#include "heislab/lab/rng.hpp"
#include "heislab/lab/sets.hpp"
#include "heislab/lab/verify.hpp"
#include "heislab/limits.hpp"
#include "check_error.hpp"
#include "random_sets.hpp"

using namespace heislab;
using namespace heislab::lab;
using heislab::testing::elems;

namespace {

std::string csv(const std::vector<ExperimentRow>& rows, bool timing = false) {
  std::ostringstream out;
  write_csv(out, rows, timing);
  return out.str();
}

std::string json(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  write_json(out, rows, false);
  return out.str();
}

SweepConfig sweep(const std::string& suite, std::vector<std::uint64_t> fields, const std::string& family,
                  std::vector<std::uint64_t> sizes, unsigned trials, std::uint64_t seed) {
  SweepConfig c;
  c.suite = suite;
  c.fields = std::move(fields);
  c.family = SetSpec::parse(family);
  c.sizes = std::move(sizes);
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("rng contract") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
  const auto s = r.sample(10, 10);
  CHECK(s == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto t = r.sample(1000, 20);
  CHECK(std::set<std::uint64_t>(t.begin(), t.end()).size() == 20);
  CHECK(std::is_sorted(t.begin(), t.end()));
  CHECK(r.sample(5, 0).empty());
  CHECK_ERROR_KIND(r.sample(3, 4), ErrorKind::SizeUnsatisfiable);
  CHECK(cell_seed(1, 5, 3, 0) == cell_seed(1, 5, 3, 0));
  CHECK(cell_seed(1, 5, 3, 0) != cell_seed(1, 5, 3, 1));
  CHECK(cell_seed(1, 5, 3, 0) != cell_seed(2, 5, 3, 0));
  // first output of the reference engine
  CHECK(Rng(5489).next() == 14514284786278117030ull);
}

TEST_CASE("set specifications parse and print") {
  const auto s = SetSpec::parse("interval:lo=1,hi=5");
  CHECK(s.kind() == SetKind::Interval);
  CHECK(s.get("hi", 0) == 5);
  CHECK(SetSpec::parse(s.to_string()).to_string() == s.to_string());
  const auto e = SetSpec::parse("explicit:1|2|4");
  CHECK(e.items() == std::vector<std::string>{"1", "2", "4"});
  CHECK(SetSpec::parse(e.to_string()).items() == e.items());
  CHECK(SetSpec::parse("random:size=3").with_size(7).get("size", 0) == 7);
  CHECK(SetSpec::parse("mult_subgroup:d=3").with_size(6).get("d", 0) == 6);
  for (const char* bad : {"", "nosuch:size=1", "random:size", "random:colour=3", "interval:lo=1,lo=2", "random:size=x", "geometric:g=3,g=2"})
    CHECK_ERROR_KIND(SetSpec::parse(bad), ErrorKind::InvalidSpec);
}

TEST_CASE("scalar families") {
  const auto f7 = FieldCtx::make(7);
  Rng rng(1);
  CHECK(gen_scalars(f7, SetSpec::parse("interval:lo=1,hi=5"), rng) == elems({1, 2, 3, 4, 5}));
  CHECK(gen_scalars(f7, SetSpec::parse("mult_subgroup:d=3"), rng) == elems({1, 2, 4}));
  CHECK(gen_scalars(f7, SetSpec::parse("geometric:g=3,size=3"), rng) == elems({1, 2, 3}));
  CHECK(gen_scalars(f7, SetSpec::parse("explicit:6|1|6"), rng) == elems({1, 6}));
  const auto r = gen_scalars(f7, SetSpec::parse("random:size=6"), rng);
  CHECK(r == elems({1, 2, 3, 4, 5, 6}));
  Rng x(9), y(9);
  CHECK(gen_scalars(FieldCtx::make(101), SetSpec::parse("random:size=20"), x) ==
        gen_scalars(FieldCtx::make(101), SetSpec::parse("random:size=20"), y));
  CHECK_ERROR_KIND(gen_scalars(f7, SetSpec::parse("random:size=7"), rng), ErrorKind::SizeUnsatisfiable);
  CHECK(gen_scalars(f7, SetSpec::parse("random:size=7,nonzero=0"), rng).size() == 7);
  CHECK_ERROR_KIND(gen_scalars(f7, SetSpec::parse("mult_subgroup:d=4"), rng), ErrorKind::NotADivisor);
  CHECK_ERROR_KIND(gen_scalars(f7, SetSpec::parse("interval:lo=1,hi=9"), rng), ErrorKind::SizeUnsatisfiable);
}

TEST_CASE("vector families") {
  const auto f9 = FieldCtx::make(3, 2);
  Rng rng(2);
  const auto sub = gen_vectors(f9, 2, SetSpec::parse("subspace:subfield=1"), rng);
  CHECK(sub.size() == 9);
  const auto plane = gen_vectors(FieldCtx::make(5), 3, SetSpec::parse("subspace:dim=2"), rng);
  CHECK(plane.size() == 25);
  std::set<FieldVector> closed(plane.begin(), plane.end());
  const auto f5 = FieldCtx::make(5);
  for (const auto& u : plane)
    for (const auto& v : plane) REQUIRE(closed.count(vec_add(f5, u, v)));
  CHECK(gen_vectors(f5, 2, SetSpec::parse("random:size=25"), rng).size() == 25);
  CHECK(gen_vectors(f5, 2, SetSpec::parse("explicit:1,2|3,4"), rng).size() == 2);
  CHECK_ERROR_KIND(gen_vectors(f5, 2, SetSpec::parse("explicit:1,2,3"), rng), ErrorKind::DimensionMismatch);
  CHECK_ERROR_KIND(gen_vectors(f5, 2, SetSpec::parse("subspace:dim=3"), rng), ErrorKind::SizeUnsatisfiable);
}

TEST_CASE("brick and complex families") {
  const auto f5 = FieldCtx::make(5);
  Rng rng(3);
  const auto b = gen_brick(f5, 2, SetSpec::parse("box_brick:x=2,y=3,z=4"), rng);
  CHECK(b.kind() == Brick::Kind::Box);
  CHECK(b.size() == 4 * 9 * 4);
  CHECK(gen_brick(f5, 1, SetSpec::parse("box_brick:full=1"), rng).size() == 125);
  CHECK(gen_complex(SetSpec::parse("interval:lo=1,hi=10"), rng).size() == 10);
  CHECK(gen_complex(SetSpec::parse("gaussian_grid:r=1"), rng).size() == 8);  // zero excluded
  CHECK(gen_complex(SetSpec::parse("explicit:1|i|1/2-i"), rng).size() == 3);
  CHECK(gen_complex(SetSpec::parse("gaussian_grid:r=2,size=5"), rng).size() == 5);
}

TEST_CASE("sweeps are deterministic and independent of workers") {
  auto cfg = sweep("thm3", {5, 7, 9, 11}, "random:size=3", {2, 3, 4}, 3, 77);
  const auto one = run_experiment(cfg);
  CHECK(one.size() == 4 * 3 * 3);
  cfg.workers = 3;
  const auto three = run_experiment(cfg);
  CHECK(csv(one) == csv(three));
  CHECK(csv(one) == csv(run_experiment(cfg)));
  cfg.seed = 78;
  CHECK(csv(one) != csv(run_experiment(cfg)));
}

TEST_CASE("sweep cells hold exact data") {
  const auto rows = run_experiment(sweep("thm4", {5}, "interval:lo=0,hi=4", {}, 1, 1));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok());
  CHECK(*rows[0].product_size == 125);
  CHECK(rows[0].ratio == doctest::Approx(1.0));

  const auto sharp = run_experiment(sweep("sharpness", {9}, "subspace:subfield=1", {}, 1, 1));
  REQUIRE(sharp.size() == 1);
  CHECK(*sharp[0].product_size == 27);
  CHECK(sharp[0].ratio == 1.0);

  const auto alias = run_experiment(sweep("thm1", {5}, "random:size=4", {}, 1, 1));
  REQUIRE(alias.size() == 1);
  CHECK(alias[0].suite == "thm6");

  const auto bad = run_experiment(sweep("thm9", {7}, "mult_subgroup:d=3", {4}, 1, 1));
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].ok());
  CHECK(bad[0].error.rfind("NotADivisor", 0) == 0);

  const auto complex = run_experiment(sweep("thm10", {}, "interval:lo=1", {10}, 1, 1));
  REQUIRE(complex.size() == 1);
  CHECK(*complex[0].product_size == 6729);
  CHECK(complex[0].domain == "C");

  CHECK(run_experiment(sweep("thm3", {}, "random:size=3", {}, 1, 1)).empty());
  CHECK_ERROR_KIND(run_experiment(sweep("thm77", {5}, "random:size=3", {}, 1, 1)), ErrorKind::InvalidSpec);
}

TEST_CASE("rows round-trip through CSV and JSON") {
  auto rows = run_experiment(sweep("thm5", {7, 11}, "random:size=4", {3, 5}, 2, 4));
  auto more = run_experiment(sweep("thm9", {7}, "mult_subgroup:d=3", {3, 4}, 1, 4));
  rows.insert(rows.end(), more.begin(), more.end());
  const std::string text = csv(rows);
  CHECK(text.rfind("# heislab rows; rng=" + std::string(kRngContract), 0) == 0);
  std::istringstream in(text);
  CHECK(csv(read_rows(in)) == text);
  const std::string doc = json(rows);
  std::istringstream jin(doc);
  CHECK(json(read_rows(jin)) == doc);
  CHECK(text.find("runtime_ms") == std::string::npos);

  auto timed_cfg = sweep("thm3", {5}, "random:size=3", {}, 1, 1);
  timed_cfg.timing = true;
  const auto timed = run_experiment(timed_cfg);
  CHECK(timed[0].runtime_ms.has_value());
  std::istringstream tin(csv(timed, true));
  CHECK(read_rows(tin)[0].runtime_ms.has_value());

  std::istringstream broken("suite,domain\nthm3\n");
  CHECK_ERROR_KIND(read_rows(broken), ErrorKind::ParseError);
  std::istringstream badjson("{\"rows\": 3}");
  CHECK_ERROR_KIND(read_rows(badjson), ErrorKind::ParseError);
}

TEST_CASE("reports summarize one suite") {
  const auto rows = run_experiment(sweep("thm4", {5, 7}, "random:size=4", {}, 2, 1));
  const auto rep = theorem_report(rows, "thm4");
  CHECK(rep.rows == 4);
  CHECK(rep.failed == 0);
  CHECK(rep.min_ratio.has_value());
  CHECK(*rep.min_ratio <= *rep.median_ratio);
  std::ostringstream out;
  print_report(out, rep);
  CHECK(out.str().find("suite thm4") == 0);
  CHECK_ERROR_KIND(theorem_report(rows, "thm3"), ErrorKind::SuiteMismatch);
  CHECK_ERROR_KIND(theorem_report(rows, "nope"), ErrorKind::InvalidSpec);
}

TEST_CASE("verify suites pass") {
  for (const auto& name : verify_suite_names()) {
    const auto res = verify_suite(name, 3);
    for (const auto& c : res.checks) CHECK_MESSAGE(c.passed, name, "/", c.name, ": ", c.detail);
  }
  CHECK_ERROR_KIND(verify_suite("nope"), ErrorKind::InvalidSpec);
}

TEST_CASE("limit strings") {
  const auto l = Limits::parse("field=1024,space=4096,pairs=1e6");
  CHECK(l.field_order == 1024);
  CHECK(l.vector_space == 4096);
  CHECK(l.pair_visits == 1'000'000);
  CHECK(Limits::parse("5000").pair_visits == 5000);
  CHECK_ERROR_KIND(Limits::parse("pairs=lots"), ErrorKind::ParseError);
  CHECK_ERROR_KIND(Limits::parse("speed=3"), ErrorKind::ParseError);
}
