#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heislab/bigint.hpp"
#include "heislab/lab/sets.hpp"

namespace heislab::lab {

enum class Ambient { Scalars, Vectors, Plane, Complex, Bricks };

/// A growth suite: which quantity is compared to which predicted bound.
struct SuiteInfo {
  std::string name;
  Ambient ambient;
  std::string bound;  // human-readable bound expression
  std::string summary;
};

/// Known suites, in display order.
const std::vector<SuiteInfo>& suites();
/// Looks up a suite by name or alias. Throws InvalidSpec.
const SuiteInfo& find_suite(const std::string& name);

struct SweepConfig {
  std::string suite;
  std::vector<std::uint64_t> fields;  // field orders q; ignored for complex suites
  SetSpec family = SetSpec::parse("random:size=4");
  std::vector<std::uint64_t> sizes;   // empty: the family's own size
  unsigned n = 1;
  unsigned trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool timing = false;
};

/// One sweep cell. Exact integers are kept exact; `predicted` and `ratio` are
/// the only floating-point fields.
struct ExperimentRow {
  std::string suite;
  std::string domain;  // "F_q" or "C"
  std::uint64_t p = 0, k = 0, q = 0;
  unsigned n = 0;
  std::string family;
  std::uint64_t size_param = 0;
  unsigned trial = 0;
  std::uint64_t seed = 0;

  std::uint64_t set_size = 0;
  std::optional<BigInt> product_size, S, energy_add, energy_mul, dot_products, cosets;

  BigInt numerator;        // the measured quantity
  std::string bound_expr;  // predicted bound with exact inputs substituted
  double predicted = 0;
  double ratio = 0;
  std::string hypotheses;  // "name=0|1;..."
  std::string aux;         // suite-specific extras "name=value;..."
  std::string error;       // empty on success
  std::optional<double> runtime_ms;

  bool ok() const noexcept { return error.empty(); }
};

/// Runs every cell (field, size, trial) of the grid. Cell failures are
/// recorded in the row. Output is sorted by (q, size, trial) and does not
/// depend on the worker count.
std::vector<ExperimentRow> run_experiment(const SweepConfig& config);

/// Computes a single cell.
ExperimentRow run_cell(const SuiteInfo& suite, const SweepConfig& config, std::uint64_t q, std::uint64_t size,
                       unsigned trial);

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing);
void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing);
/// Reads CSV or JSON (detected from the first character). Throws ParseError.
std::vector<ExperimentRow> read_rows(std::istream& in);

struct FlagTally {
  std::string name;
  std::size_t satisfied = 0;
  std::size_t total = 0;
};

struct TheoremReport {
  std::string suite;
  std::string bound;
  std::size_t rows = 0;
  std::size_t failed = 0;
  std::optional<double> min_ratio, median_ratio;
  // Restricted to rows meeting every hypothesis flag.
  std::size_t in_regime = 0;
  std::optional<double> regime_min_ratio, regime_median_ratio;
  std::vector<FlagTally> flags;
  std::vector<ExperimentRow> table;
};

/// Summarizes rows of one suite. Throws SuiteMismatch when a row belongs to
/// another suite.
TheoremReport theorem_report(const std::vector<ExperimentRow>& rows, const std::string& theorem);

void print_report(std::ostream& out, const TheoremReport& report);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace heislab::lab
