// heislab command-line interface.
//
// Exit codes: 0 success, 1 a checked identity or inequality failed, 2 the
// input was rejected.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "heislab/error.hpp"
#include "heislab/ffield.hpp"
#include "heislab/kernels.hpp"
#include "heislab/lab/experiment.hpp"
#include "heislab/lab/rng.hpp"
#include "heislab/lab/verify.hpp"
#include "heislab/limits.hpp"

namespace {

using namespace heislab;

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kInvalid = 2;

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) fail(ErrorKind::InvalidSpec, "not an integer: '" + s + "'");
  return v;
}

// "3,5,7", "3..31" or a mix; with `primes` a range keeps only primes.
std::vector<std::uint64_t> parse_list(const std::string& text, bool primes) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(item));
      continue;
    }
    const std::uint64_t lo = parse_u64(item.substr(0, dots)), hi = parse_u64(item.substr(dots + 2));
    require(lo <= hi && hi - lo <= 1'000'000, ErrorKind::InvalidSpec, "bad range '" + item + "'");
    for (std::uint64_t v = lo; v <= hi; ++v)
      if (!primes || is_prime(v)) out.push_back(v);
  }
  return out;
}

int field_check(std::uint64_t p, unsigned k, const std::string& modulus) {
  std::optional<std::vector<std::uint32_t>> poly;
  if (!modulus.empty()) {
    poly.emplace();
    for (auto c : parse_list(modulus, false)) poly->push_back(static_cast<std::uint32_t>(c));
  }
  const FieldCtx ctx = FieldCtx::make(p, k, poly);
  std::cout << ctx.describe() << "\n";
  std::cout << "generator " << ctx.format(ctx.generator()) << "\n";
  std::cout << "simd " << kernels::to_string(kernels::active()) << "\n";

  lab::Rng rng(ctx.q());
  for (int t = 0; t < 1000; ++t) {
    const Elem a{static_cast<std::uint32_t>(rng.below(ctx.q()))}, b{static_cast<std::uint32_t>(rng.below(ctx.q()))},
        c{static_cast<std::uint32_t>(rng.below(ctx.q()))};
    const bool ok = ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)) &&
                    ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)) &&
                    ctx.mul(a, b) == ctx.mul_poly(a, b) && (a == ctx.zero() || ctx.mul(a, ctx.inv(a)) == ctx.one()) &&
                    ctx.pow(a, ctx.q()) == a;
    if (!ok) {
      std::cout << "FAIL field axioms at a=" << ctx.format(a) << " b=" << ctx.format(b) << " c=" << ctx.format(c) << "\n";
      return kAssertion;
    }
  }
  std::complex<double> sum = 0;
  for (Elem a : ctx.elements()) sum += ctx.chi(a);
  if (std::abs(sum) > 1e-9) {
    std::cout << "FAIL character sum " << std::abs(sum) << "\n";
    return kAssertion;
  }
  std::cout << "PASS field axioms, Frobenius, character sum\n";
  return kOk;
}

struct GrowthArgs {
  std::string suite;
  std::string fields;
  std::string family = "random:size=4";
  std::string sizes;
  unsigned n = 1;
  unsigned trials = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  unsigned workers = 1;
  bool timing = false;
};

int growth(const GrowthArgs& g) {
  lab::SweepConfig cfg;
  cfg.suite = lab::find_suite(g.suite).name;
  cfg.fields = parse_list(g.fields, true);
  cfg.family = lab::SetSpec::parse(g.family);
  cfg.sizes = parse_list(g.sizes, false);
  cfg.n = g.n;
  cfg.trials = g.trials;
  cfg.seed = g.seed;
  cfg.workers = g.workers;
  cfg.timing = g.timing;
  const auto rows = lab::run_experiment(cfg);

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out, std::ios::binary);
    if (!file) fail(ErrorKind::InvalidSpec, "cannot write " + g.out);
  }
  std::ostream& out = g.out.empty() ? std::cout : file;
  if (g.format == "json") lab::write_json(out, rows, g.timing);
  else lab::write_csv(out, rows, g.timing);

  std::size_t failed = 0, broken = 0;
  for (const auto& r : rows) {
    if (r.ok()) continue;
    ++failed;
    if (r.error.rfind(std::string(to_string(ErrorKind::InvariantViolation)), 0) == 0) ++broken;
  }
  std::cerr << rows.size() << " rows, " << failed << " with errors\n";
  return broken ? kAssertion : kOk;
}

int verify(const std::string& suite, std::uint64_t seed, const std::string& format) {
  std::vector<std::string> names = suite == "all" ? lab::verify_suite_names() : std::vector<std::string>{suite};
  bool ok = true;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& name : names) {
    const lab::VerifyResult res = lab::verify_suite(name, seed);
    ok = ok && res.passed();
    nlohmann::ordered_json j{{"suite", res.suite}, {"passed", res.passed()}, {"failures", nlohmann::ordered_json::array()}};
    for (const auto& c : res.checks) {
      if (format != "json") std::cout << (c.passed ? "PASS " : "FAIL ") << res.suite << "/" << c.name
                                      << (c.passed ? "" : ": " + c.detail) << "\n";
      if (!c.passed) j["failures"].push_back({{"check", c.name}, {"detail", c.detail}});
    }
    doc.push_back(std::move(j));
  }
  if (format == "json") std::cout << doc.dump(2) << "\n";
  return ok ? kOk : kAssertion;
}

int report(const std::string& in, const std::string& theorem) {
  std::ifstream file(in, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidSpec, "cannot read " + in);
  const auto rows = lab::read_rows(file);
  lab::print_report(std::cout, lab::theorem_report(rows, theorem));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heislab: exact product growth in Heisenberg groups"};
  app.set_config("--config", "", "TOML file with option values; command-line flags take precedence");
  app.require_subcommand(1);

  auto* field = app.add_subcommand("field", "finite field utilities");
  auto* check = field->add_subcommand("check", "build a field and run its self-checks");
  field->require_subcommand(1);
  std::uint64_t fp = 0;
  unsigned fk = 1;
  std::string fmod;
  check->add_option("--p", fp, "characteristic")->required();
  check->add_option("--k", fk, "extension degree")->check(CLI::Range(1u, 20u));
  check->add_option("--modulus", fmod, "monic modulus c0,c1,...,1 (little-endian)");

  GrowthArgs g;
  auto* grow = app.add_subcommand("growth", "sweep a suite over fields, sizes and trials");
  std::vector<std::string> suite_names;
  for (const auto& s : lab::suites()) suite_names.push_back(s.name);
  suite_names.push_back("thm1");
  grow->add_option("--suite", g.suite, "suite name")->required()->check(CLI::IsMember(suite_names));
  grow->add_option("--p", g.fields, "field orders: list '5,7,9' or prime range '3..31'");
  grow->add_option("--family", g.family, "set family, e.g. random:size=8 or mult_subgroup:d=3");
  grow->add_option("--sizes", g.sizes, "sizes overriding the family size: list or range");
  grow->add_option("--n", g.n, "vector dimension")->check(CLI::Range(1u, 16u));
  grow->add_option("--trials", g.trials, "trials per cell");
  grow->add_option("--seed", g.seed, "64-bit seed");
  grow->add_option("--out", g.out, "output file (default stdout)");
  grow->add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  grow->add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1u, 256u));
  grow->add_flag("--timing", g.timing, "add a runtime_ms column (output no longer byte-stable)");

  std::string vsuite = "all", vformat = "text";
  std::uint64_t vseed = 1;
  auto* ver = app.add_subcommand("verify", "run oracle cross-checks");
  std::vector<std::string> vnames = lab::verify_suite_names();
  vnames.push_back("all");
  ver->add_option("--suite", vsuite, "core, spectral, reduction, incidence, complex or all")->check(CLI::IsMember(vnames));
  ver->add_option("--seed", vseed, "seed for the random instances");
  ver->add_option("--format", vformat, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string rin, rtheorem;
  auto* rep = app.add_subcommand("report", "summarize rows of one suite");
  rep->add_option("--in", rin, "CSV or JSON rows")->required();
  rep->add_option("--theorem", rtheorem, "suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    (void)limits();  // surface a malformed HEISLAB_LIMIT before any work
    if (*check) return field_check(fp, fk, fmod);
    if (*grow) return growth(g);
    if (*ver) return verify(vsuite, vseed, vformat);
    if (*rep) return report(rin, rtheorem);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvariantViolation ? kAssertion : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
