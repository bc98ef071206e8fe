#include <algorithm>
#include <iomanip>
#include <ostream>

#include "heislab/error.hpp"
#include "heislab/lab/experiment.hpp"

namespace heislab::lab {

namespace {

std::optional<double> median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

std::optional<double> minimum(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return *std::min_element(v.begin(), v.end());
}

std::vector<std::pair<std::string, bool>> parse_flags(const std::string& text) {
  std::vector<std::pair<std::string, bool>> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const auto eq = item.rfind('=');
    if (eq != std::string::npos) out.emplace_back(item.substr(0, eq), item.substr(eq + 1) == "1");
    start = end + 1;
  }
  return out;
}

std::string show(const std::optional<double>& v) { return v ? format_double(*v) : "-"; }

}  // namespace

TheoremReport theorem_report(const std::vector<ExperimentRow>& rows, const std::string& theorem) {
  const SuiteInfo& suite = find_suite(theorem);
  TheoremReport rep;
  rep.suite = suite.name;
  rep.bound = suite.bound;
  std::vector<double> all, regime;
  for (const auto& r : rows) {
    if (r.suite != suite.name)
      fail(ErrorKind::SuiteMismatch, "row from suite '" + r.suite + "' in a report for '" + suite.name + "'");
    ++rep.rows;
    rep.table.push_back(r);
    if (!r.ok()) {
      ++rep.failed;
      continue;
    }
    all.push_back(r.ratio);
    bool every = true;
    for (const auto& [name, value] : parse_flags(r.hypotheses)) {
      auto it = std::find_if(rep.flags.begin(), rep.flags.end(), [&](const FlagTally& t) { return t.name == name; });
      if (it == rep.flags.end()) {
        rep.flags.push_back({name, 0, 0});
        it = rep.flags.end() - 1;
      }
      ++it->total;
      if (value) ++it->satisfied;
      every = every && value;
    }
    if (every) {
      ++rep.in_regime;
      regime.push_back(r.ratio);
    }
  }
  rep.min_ratio = minimum(all);
  rep.median_ratio = median(all);
  rep.regime_min_ratio = minimum(regime);
  rep.regime_median_ratio = median(regime);
  return rep;
}

void print_report(std::ostream& out, const TheoremReport& rep) {
  out << "suite " << rep.suite << ": measured / " << rep.bound << "\n";
  out << "rows " << rep.rows << ", failed " << rep.failed << ", meeting all hypotheses " << rep.in_regime << "\n";
  out << "ratio min " << show(rep.min_ratio) << ", median " << show(rep.median_ratio) << "\n";
  out << "ratio in regime: min " << show(rep.regime_min_ratio) << ", median " << show(rep.regime_median_ratio) << "\n";
  for (const auto& f : rep.flags) out << "  " << f.name << ": " << f.satisfied << "/" << f.total << "\n";
  out << "\n";
  auto cell = [&out](const std::string& text, int width) { out << std::left << std::setw(width) << text << ' '; };
  cell("domain", 9);
  cell("size", 6);
  cell("trial", 5);
  cell("|set|", 8);
  cell("measured", 14);
  cell("predicted", 20);
  cell("ratio", 20);
  out << "hypotheses\n";
  for (const auto& r : rep.table) {
    cell(r.domain, 9);
    cell(std::to_string(r.size_param), 6);
    cell(std::to_string(r.trial), 5);
    if (!r.ok()) {
      out << "error: " << r.error << "\n";
      continue;
    }
    cell(std::to_string(r.set_size), 8);
    cell(to_decimal(r.numerator), 14);
    cell(format_double(r.predicted), 20);
    cell(format_double(r.ratio), 20);
    out << r.hypotheses << "\n";
  }
}

}  // namespace heislab::lab
