#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "heislab/error.hpp"
#include "heislab/lab/experiment.hpp"

namespace heislab::lab {

namespace {

const std::vector<std::string> kColumns = {
    "suite",     "domain",      "p",         "k",         "q",        "n",       "family",
    "size_param", "trial",      "seed",      "set_size",  "product_size", "S",   "E_plus",
    "E_mul",     "dot_products", "cosets",   "numerator", "bound",    "predicted", "ratio",
    "hypotheses", "aux",        "error"};

std::string opt(const std::optional<BigInt>& v) { return v ? to_decimal(*v) : ""; }

std::vector<std::string> fields_of(const ExperimentRow& r) {
  return {r.suite,
          r.domain,
          std::to_string(r.p),
          std::to_string(r.k),
          std::to_string(r.q),
          std::to_string(r.n),
          r.family,
          std::to_string(r.size_param),
          std::to_string(r.trial),
          std::to_string(r.seed),
          std::to_string(r.set_size),
          opt(r.product_size),
          opt(r.S),
          opt(r.energy_add),
          opt(r.energy_mul),
          opt(r.dot_products),
          opt(r.cosets),
          to_decimal(r.numerator),
          r.bound_expr,
          format_double(r.predicted),
          format_double(r.ratio),
          r.hypotheses,
          r.aux,
          r.error};
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) fail(ErrorKind::ParseError, "unterminated quote in CSV line");
  out.push_back(std::move(cur));
  return out;
}

std::uint64_t to_u64(const std::string& s, const std::string& col) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "column " + col + ": expected an integer, got '" + s + "'");
  }
}

double to_real(const std::string& s, const std::string& col) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "column " + col + ": expected a number, got '" + s + "'");
  }
}

BigInt to_big(const std::string& s, const std::string& col) {
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "column " + col + ": bad integer '" + s + "'");
  return v;
}

std::optional<BigInt> to_opt(const std::string& s, const std::string& col) {
  if (s.empty()) return std::nullopt;
  return to_big(s, col);
}

ExperimentRow row_from(const std::map<std::string, std::string>& f) {
  auto get = [&](const std::string& k) -> std::string {
    auto it = f.find(k);
    if (it == f.end()) fail(ErrorKind::ParseError, "missing column " + k);
    return it->second;
  };
  ExperimentRow r;
  r.suite = get("suite");
  r.domain = get("domain");
  r.p = to_u64(get("p"), "p");
  r.k = to_u64(get("k"), "k");
  r.q = to_u64(get("q"), "q");
  r.n = static_cast<unsigned>(to_u64(get("n"), "n"));
  r.family = get("family");
  r.size_param = to_u64(get("size_param"), "size_param");
  r.trial = static_cast<unsigned>(to_u64(get("trial"), "trial"));
  r.seed = to_u64(get("seed"), "seed");
  r.set_size = to_u64(get("set_size"), "set_size");
  r.product_size = to_opt(get("product_size"), "product_size");
  r.S = to_opt(get("S"), "S");
  r.energy_add = to_opt(get("E_plus"), "E_plus");
  r.energy_mul = to_opt(get("E_mul"), "E_mul");
  r.dot_products = to_opt(get("dot_products"), "dot_products");
  r.cosets = to_opt(get("cosets"), "cosets");
  r.numerator = to_big(get("numerator"), "numerator");
  r.bound_expr = get("bound");
  r.predicted = to_real(get("predicted"), "predicted");
  r.ratio = to_real(get("ratio"), "ratio");
  r.hypotheses = get("hypotheses");
  r.aux = get("aux");
  r.error = get("error");
  if (auto it = f.find("runtime_ms"); it != f.end() && !it->second.empty()) r.runtime_ms = to_real(it->second, "runtime_ms");
  return r;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing) {
  out << "# heislab rows; rng=" << kRngContract << "\n";
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  if (timing) out << ",runtime_ms";
  out << "\n";
  for (const auto& r : rows) {
    const auto f = fields_of(r);
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << csv_quote(f[i]);
    if (timing) out << "," << (r.runtime_ms ? format_double(*r.runtime_ms) : "");
    out << "\n";
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing) {
  nlohmann::ordered_json doc;
  doc["rng"] = std::string(kRngContract);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    const auto f = fields_of(r);
    for (std::size_t i = 0; i < f.size(); ++i) j[kColumns[i]] = f[i];
    if (timing) j["runtime_ms"] = r.runtime_ms ? format_double(*r.runtime_ms) : "";
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << "\n";
}

std::vector<ExperimentRow> read_rows(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<ExperimentRow> rows;
  if (first == std::string::npos) return rows;

  if (text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.contains("rows") || !doc["rows"].is_array()) fail(ErrorKind::ParseError, "JSON document lacks a rows array");
    for (const auto& j : doc["rows"]) {
      std::map<std::string, std::string> f;
      for (const auto& [k, v] : j.items()) {
        if (!v.is_string()) fail(ErrorKind::ParseError, "JSON field " + k + " must be a string");
        f[k] = v.get<std::string>();
      }
      rows.push_back(row_from(f));
    }
    return rows;
  }

  std::istringstream lines(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = csv_split(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size())
      fail(ErrorKind::ParseError, "row has " + std::to_string(cells.size()) + " fields, header has " +
                                      std::to_string(header.size()));
    std::map<std::string, std::string> f;
    for (std::size_t i = 0; i < header.size(); ++i) f[header[i]] = cells[i];
    rows.push_back(row_from(f));
  }
  if (header.empty()) fail(ErrorKind::ParseError, "no CSV header");
  return rows;
}

}  // namespace heislab::lab
