#pragma once

// Exact arithmetic domains for the energy and incidence modules: a finite
// field, or complex numbers with rational real and imaginary parts. Both
// expose the same value interface plus packed/hashed keys for tuples.

#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "heislab/bigint.hpp"
#include "heislab/complex_rational.hpp"
#include "heislab/error.hpp"
#include "heislab/ffield.hpp"
#include "heislab/flat_counter.hpp"

namespace heislab {

struct U64Hash {
  std::size_t operator()(std::uint64_t k) const noexcept { return static_cast<std::size_t>(mix64(k)); }
};

class FieldDomain {
 public:
  using Value = Elem;
  using Hash = ElemHash;
  using Key2 = std::uint64_t;
  using Key3 = std::uint64_t;
  using Key2Hash = U64Hash;
  using Key3Hash = U64Hash;
  static constexpr bool finite = true;

  explicit FieldDomain(FieldCtx ctx) : ctx_(std::move(ctx)) {
    require(ctx_.q() <= (1u << 21), ErrorKind::LimitExceeded, "field too large for packed tuple keys");
  }

  const FieldCtx& field() const noexcept { return ctx_; }

  Value zero() const noexcept { return ctx_.zero(); }
  Value one() const noexcept { return ctx_.one(); }
  Value from_int(std::int64_t n) const noexcept { return ctx_.from_int(n); }
  bool is_zero(Value a) const noexcept { return a.v == 0; }
  Value add(Value a, Value b) const noexcept { return ctx_.add(a, b); }
  Value sub(Value a, Value b) const noexcept { return ctx_.sub(a, b); }
  Value neg(Value a) const noexcept { return ctx_.neg(a); }
  Value mul(Value a, Value b) const noexcept { return ctx_.mul(a, b); }
  Value div(Value a, Value b) const { return ctx_.div(a, b); }

  // q < 2^21 so three coordinates pack into 63 bits.
  Key2 key2(Value a, Value b) const noexcept { return (std::uint64_t{a.v} << 21) | b.v; }
  Key3 key3(Value a, Value b, Value c) const noexcept {
    return (std::uint64_t{a.v} << 42) | (std::uint64_t{b.v} << 21) | c.v;
  }

  std::string format(Value a) const { return ctx_.format(a); }
  Value parse(const std::string& s) const { return ctx_.parse(s); }
  std::string describe() const { return ctx_.describe(); }

 private:
  FieldCtx ctx_;
};

struct PairHash {
  std::size_t operator()(const std::pair<ComplexRational, ComplexRational>& k) const noexcept {
    return static_cast<std::size_t>(mix64(k.first.hash() ^ (mix64(k.second.hash()) << 1)));
  }
};

struct TripleHash {
  std::size_t operator()(const std::tuple<ComplexRational, ComplexRational, ComplexRational>& k) const noexcept {
    std::uint64_t h = std::get<0>(k).hash();
    h = mix64(h ^ std::get<1>(k).hash());
    h = mix64(h ^ std::get<2>(k).hash());
    return static_cast<std::size_t>(h);
  }
};

class ComplexDomain {
 public:
  using Value = ComplexRational;
  using Hash = ComplexRationalHash;
  using Key2 = std::pair<ComplexRational, ComplexRational>;
  using Key3 = std::tuple<ComplexRational, ComplexRational, ComplexRational>;
  using Key2Hash = PairHash;
  using Key3Hash = TripleHash;
  static constexpr bool finite = false;

  Value zero() const { return Value(0); }
  Value one() const { return Value(1); }
  Value from_int(std::int64_t n) const { return Value(static_cast<long>(n)); }
  bool is_zero(const Value& a) const noexcept { return a.is_zero(); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const { return a / b; }

  Key2 key2(const Value& a, const Value& b) const { return {a, b}; }
  Key3 key3(const Value& a, const Value& b, const Value& c) const { return {a, b, c}; }

  std::string format(const Value& a) const { return a.to_string(); }
  Value parse(const std::string& s) const { return Value::parse(s); }
  std::string describe() const { return "C (exact complex rationals)"; }
};

/// Multiplicity counter over hashed keys; 64-bit keys use open addressing.
template <class Key, class Hash>
class KeyCounter {
 public:
  void add(const Key& k, std::uint64_t times = 1) { map_[k] += times; }
  std::size_t size() const noexcept { return map_.size(); }
  void clear() { map_.clear(); }
  BigInt sum_squares() const {
    unsigned __int128 acc = 0;
    for (const auto& [k, c] : map_) acc += static_cast<unsigned __int128>(c) * c;
    return big128(acc);
  }
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [k, c] : map_) f(k, c);
  }

 private:
  std::unordered_map<Key, std::uint64_t, Hash> map_;
};

template <class Hash>
class KeyCounter<std::uint64_t, Hash> {
 public:
  void add(std::uint64_t k, std::uint64_t times = 1) { counter_.add(k, times); }
  std::size_t size() const noexcept { return counter_.size(); }
  void clear() { counter_.clear(); }
  BigInt sum_squares() const { return big128(counter_.sum_squares()); }
  template <class F>
  void for_each(F&& f) const {
    counter_.for_each(f);
  }

 private:
  FlatCounter counter_;
};

}  // namespace heislab
