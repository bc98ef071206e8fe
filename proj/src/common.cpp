#include <cstdlib>
#include <limits>
#include <sstream>

#include "heislab/bigint.hpp"
#include "heislab/error.hpp"
#include "heislab/flat_counter.hpp"
#include "heislab/limits.hpp"

namespace heislab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::ZeroInSet: return "ZeroInSet";
    case ErrorKind::SetTooSmall: return "SetTooSmall";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::SizeUnsatisfiable: return "SizeUnsatisfiable";
    case ErrorKind::SuiteMismatch: return "SuiteMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

std::uint64_t parse_count(const std::string& s) {
  // Accepts plain integers and forms like "1e9".
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad limit value '" + s + "'");
  }
  if (pos != s.size() || v < 1 || v > 1.8e19) fail(ErrorKind::ParseError, "bad limit value '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

Limits& global_limits() {
  static Limits current = Limits::from_env();
  return current;
}

}  // namespace

Limits Limits::parse(const std::string& text) {
  Limits out;
  if (text.empty()) return out;
  if (text.find('=') == std::string::npos) {
    out.pair_visits = parse_count(text);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorKind::ParseError, "expected key=value in '" + item + "'");
    std::string key = item.substr(0, eq);
    std::uint64_t value = parse_count(item.substr(eq + 1));
    if (key == "field")
      out.field_order = value;
    else if (key == "space")
      out.vector_space = value;
    else if (key == "pairs")
      out.pair_visits = value;
    else
      fail(ErrorKind::ParseError, "unknown limit '" + key + "'");
  }
  return out;
}

Limits Limits::from_env() {
  const char* env = std::getenv("HEISLAB_LIMIT");
  return env ? parse(env) : Limits{};
}

const Limits& limits() { return global_limits(); }

ScopedLimits::ScopedLimits(const Limits& next) : saved_(global_limits()) { global_limits() = next; }
ScopedLimits::~ScopedLimits() { global_limits() = saved_; }

void check_pairs(std::uint64_t visits, const char* what) {
  if (visits > limits().pair_visits)
    fail(ErrorKind::LimitExceeded, std::string(what) + " needs " + std::to_string(visits) +
                                       " visits, limit " + std::to_string(limits().pair_visits));
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

std::uint64_t sat_pow(std::uint64_t base, unsigned exp) noexcept {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

std::size_t hash_mpz(const BigInt& v) noexcept {
  const mpz_srcptr z = v.get_mpz_t();
  std::uint64_t h = static_cast<std::uint64_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) h = mix64(h ^ static_cast<std::uint64_t>(mpz_getlimbn(z, i)));
  return static_cast<std::size_t>(h);
}

}  // namespace heislab
