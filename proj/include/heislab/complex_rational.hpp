#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include "heislab/bigint.hpp"

namespace heislab {

/// re + im*i with arbitrary-precision rational parts, always in lowest terms
/// with positive denominators so equality and hashing are structural.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(BigRat re, BigRat im = 0);

  /// Accepts "a", "a/b", "ci", "c/di", "a/b+c/di", "a-i", "-i", ... with
  /// arbitrary-precision integers a, b, c, d. Throws ParseError.
  static ComplexRational parse(const std::string& text);
  static ComplexRational i() { return {BigRat(0), BigRat(1)}; }

  const BigRat& real() const noexcept { return re_; }
  const BigRat& imag() const noexcept { return im_; }
  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }

  ComplexRational operator-() const { return {-re_, -im_}; }
  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  /// Throws DivisionByZero.
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im); a total order for canonical sorting only.
  friend std::strong_ordering operator<=>(const ComplexRational& a, const ComplexRational& b) {
    if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Canonical text, parseable by parse(): "3", "-1/2", "2i", "1/2+3/4i", "1-i".
  std::string to_string() const;

  std::size_t hash() const noexcept;

 private:
  BigRat re_{0};
  BigRat im_{0};
};

struct ComplexRationalHash {
  std::size_t operator()(const ComplexRational& z) const noexcept { return z.hash(); }
};

}  // namespace heislab
