#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace heislab {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Open-addressing multiset of 64-bit keys. A slot is empty iff its count is 0,
/// so every key value (including all-ones) is storable.
class FlatCounter {
 public:
  explicit FlatCounter(std::size_t expected = 16) { rehash(capacity_for(expected)); }

  void add(std::uint64_t key, std::uint64_t times = 1) {
    if ((size_ + 1) * 4 > slots_.size() * 3) rehash(slots_.size() * 2);
    std::size_t i = mix64(key) & mask_;
    while (true) {
      Slot& s = slots_[i];
      if (s.count == 0) {
        s.key = key;
        s.count = times;
        ++size_;
        return;
      }
      if (s.key == key) {
        s.count += times;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  std::uint64_t get(std::uint64_t key) const noexcept {
    std::size_t i = mix64(key) & mask_;
    while (true) {
      const Slot& s = slots_[i];
      if (s.count == 0) return 0;
      if (s.key == key) return s.count;
      i = (i + 1) & mask_;
    }
  }

  std::size_t size() const noexcept { return size_; }

  void clear() {
    if (size_ == 0) return;
    std::fill(slots_.begin(), slots_.end(), Slot{});
    size_ = 0;
  }

  void merge(const FlatCounter& other) {
    for (const Slot& s : other.slots_)
      if (s.count) add(s.key, s.count);
  }

  template <class F>
  void for_each(F&& f) const {
    for (const Slot& s : slots_)
      if (s.count) f(s.key, s.count);
  }

  /// Sum of squared counts; callers guard against overflow via the pair limit.
  unsigned __int128 sum_squares() const noexcept {
    unsigned __int128 acc = 0;
    for (const Slot& s : slots_)
      if (s.count) acc += static_cast<unsigned __int128>(s.count) * s.count;
    return acc;
  }

  /// (key, count) pairs sorted by key.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(size_);
    for_each([&](std::uint64_t k, std::uint64_t c) { out.emplace_back(k, c); });
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Slot {
    std::uint64_t key = 0;
    std::uint64_t count = 0;
  };

  static std::size_t capacity_for(std::size_t n) {
    std::size_t cap = 16;
    while (cap * 3 < n * 4 + 4) cap <<= 1;
    return cap;
  }

  void rehash(std::size_t cap) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(cap, Slot{});
    mask_ = cap - 1;
    size_ = 0;
    for (const Slot& s : old)
      if (s.count) add(s.key, s.count);
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace heislab
