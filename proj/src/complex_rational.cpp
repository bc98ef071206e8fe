#include "heislab/complex_rational.hpp"

#include <cctype>

#include "heislab/error.hpp"
#include "heislab/flat_counter.hpp"

namespace heislab {

ComplexRational::ComplexRational(BigRat re, BigRat im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  require(!b.is_zero(), ErrorKind::DivisionByZero, "complex division by zero");
  const BigRat den = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// [+|-] digits [/ digits]
BigRat parse_rational(const std::string& s, const std::string& whole) {
  auto bad = [&] { fail(ErrorKind::ParseError, "bad complex rational '" + whole + "'"); };
  std::string body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  const auto slash = body.find('/');
  const std::string num = body.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) bad();
  BigInt n(num, 10), d(den, 10);
  if (d == 0) bad();
  BigRat r(n, d);
  r.canonicalize();
  return negative ? BigRat(-r) : r;
}

}  // namespace

ComplexRational ComplexRational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorKind::ParseError, "empty complex rational");

  if (s.back() != 'i') return {parse_rational(s, text), BigRat(0)};

  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  BigRat re = re_part.empty() ? BigRat(0) : parse_rational(re_part, text);
  return {re, parse_rational(im_part, text)};
}

std::string ComplexRational::to_string() const {
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return re_.get_str(10);
  std::string im;
  if (im_ == 1)
    im = "i";
  else if (im_ == -1)
    im = "-i";
  else
    im = im_.get_str(10) + "i";
  if (sgn(re_) == 0) return im;
  return re_.get_str(10) + (sgn(im_) > 0 ? "+" : "") + im;
}

std::size_t ComplexRational::hash() const noexcept {
  std::uint64_t h = hash_mpz(re_.get_num());
  h = mix64(h ^ hash_mpz(re_.get_den()));
  h = mix64(h ^ (hash_mpz(im_.get_num()) * 31));
  h = mix64(h ^ hash_mpz(im_.get_den()));
  return static_cast<std::size_t>(h);
}

}  // namespace heislab
