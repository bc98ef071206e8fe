#include "heislab/ffield.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heislab/error.hpp"
#include "heislab/kernels.hpp"
#include "heislab/limits.hpp"

namespace heislab {

static_assert(sizeof(Elem) == sizeof(std::uint32_t));

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian coefficients mod p

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic polynomial m.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = lead * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  return r;
}

Poly digits(std::uint64_t index, std::uint32_t p, unsigned k) {
  Poly c(k);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return c;
}

std::uint64_t undigits(const Poly& c, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  Poly m(monic.begin(), monic.end());
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = sat_pow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g = digits(idx, p, d);
      g.push_back(1);
      if (poly_rem(m, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> find_irreducible(std::uint32_t p, unsigned k) {
  if (k == 1) return {0, 1};
  const std::uint64_t count = sat_pow(p, k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly m = digits(idx, p, k);
    m.push_back(1);
    if (is_irreducible(p, m)) return m;
  }
  fail(ErrorKind::InvariantViolation, "no irreducible polynomial found");
}

FieldCtx FieldCtx::make(std::uint64_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus) {
  require(k >= 1, ErrorKind::InvalidSpec, "extension degree must be >= 1");
  require(is_prime(p), ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  const std::uint64_t q = sat_pow(p, k);
  require(q <= limits().field_order && q < (std::uint64_t{1} << 31), ErrorKind::LimitExceeded,
          "field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds limit");

  auto impl = std::make_shared<Impl>();
  impl->p = static_cast<std::uint32_t>(p);
  impl->k = k;
  impl->q = static_cast<std::uint32_t>(q);

  if (modulus) {
    const Poly& m = *modulus;
    require(m.size() == k + 1, ErrorKind::InvalidSpec, "modulus must have degree k");
    require(m.back() == 1, ErrorKind::InvalidSpec, "modulus must be monic");
    for (auto c : m) require(c < p, ErrorKind::InvalidSpec, "modulus coefficient not reduced");
    require(is_irreducible(impl->p, m), ErrorKind::ReducibleModulus, "modulus factors over F_p");
    impl->modulus = m;
  } else {
    impl->modulus = find_irreducible(impl->p, k);
  }

  impl->pow_p.resize(k + 1);
  impl->pow_p[0] = 1;
  for (unsigned i = 1; i <= k; ++i) impl->pow_p[i] = impl->pow_p[i - 1] * impl->p;

  // Generator search runs before tables exist, so it uses polynomial products.
  const std::uint32_t pp = impl->p;
  const Poly& mod = impl->modulus;
  auto pmul = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (k == 1) return a * b % pp;
    return undigits(poly_rem(poly_mul(digits(a, pp, k), digits(b, pp, k), pp), mod, pp), pp);
  };
  auto ppow = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = pmul(r, a);
      a = pmul(a, a);
      e >>= 1;
    }
    return r;
  };
  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  std::uint64_t g = 1;
  if (order > 1) {
    for (g = 2; g < q; ++g) {
      bool ok = true;
      for (auto r : factors)
        if (ppow(g, order / r) == 1) {
          ok = false;
          break;
        }
      if (ok) break;
    }
  }
  impl->generator = Elem{static_cast<std::uint32_t>(g)};

  if (k > 1) {
    impl->exp_table.resize(order);
    impl->log_table.assign(q, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      impl->exp_table[i] = static_cast<std::uint32_t>(x);
      impl->log_table[x] = static_cast<std::uint32_t>(i);
      x = pmul(x, g);
    }
  }

  impl->trace_basis.resize(k);
  for (unsigned i = 0; i < k; ++i) {
    const std::uint64_t t_i = impl->pow_p[i];  // the monomial t^i
    std::uint64_t acc = 0;
    std::uint64_t frob = t_i;
    for (unsigned j = 0; j < k; ++j) {
      Poly a = digits(acc, pp, k), b = digits(frob, pp, k);
      for (unsigned c = 0; c < k; ++c) a[c] = (a[c] + b[c]) % pp;
      acc = undigits(a, pp);
      frob = ppow(frob, pp);
    }
    require(acc < pp, ErrorKind::InvariantViolation, "trace left the prime subfield");
    impl->trace_basis[i] = static_cast<std::uint32_t>(acc);
  }

  return FieldCtx(std::move(impl));
}

FieldCtx FieldCtx::of_order(std::uint64_t q) {
  require(q >= 2, ErrorKind::InvalidSpec, "field order must be >= 2");
  auto f = prime_factors(q);
  require(f.size() == 1, ErrorKind::CompositeModulus, std::to_string(q) + " is not a prime power");
  unsigned k = 0;
  for (std::uint64_t r = q; r > 1; r /= f[0]) ++k;
  return make(f[0], k);
}

Elem FieldCtx::from_int(std::int64_t n) const noexcept {
  const std::int64_t p = impl_->p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem FieldCtx::from_coeffs(std::span<const std::uint32_t> c) const {
  require(c.size() <= impl_->k, ErrorKind::InvalidSpec, "too many coefficients");
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    require(c[i] < impl_->p, ErrorKind::InvalidSpec, "coefficient not reduced");
    v = v * impl_->p + c[i];
  }
  return Elem{static_cast<std::uint32_t>(v)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(Elem a) const { return digits(a.v, impl_->p, impl_->k); }

Elem FieldCtx::add(Elem a, Elem b) const noexcept {
  const std::uint32_t p = impl_->p;
  if (impl_->k == 1) {
    std::uint32_t s = a.v + b.v;
    return Elem{s >= p ? s - p : s};
  }
  if (p == 2) return Elem{a.v ^ b.v};
  std::uint32_t x = a.v, y = b.v, out = 0, place = 1;
  for (unsigned i = 0; i < impl_->k; ++i) {
    std::uint32_t d = x % p + y % p;
    if (d >= p) d -= p;
    out += d * place;
    place *= p;
    x /= p;
    y /= p;
  }
  return Elem{out};
}

Elem FieldCtx::neg(Elem a) const noexcept {
  const std::uint32_t p = impl_->p;
  if (impl_->k == 1) return Elem{a.v == 0 ? 0 : p - a.v};
  if (p == 2) return a;
  std::uint32_t x = a.v, out = 0, place = 1;
  for (unsigned i = 0; i < impl_->k; ++i) {
    std::uint32_t d = x % p;
    out += (d == 0 ? 0 : p - d) * place;
    place *= p;
    x /= p;
  }
  return Elem{out};
}

Elem FieldCtx::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FieldCtx::mul(Elem a, Elem b) const noexcept {
  if (impl_->k == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % impl_->p)};
  if (a.v == 0 || b.v == 0) return Elem{0};
  const std::uint32_t order = impl_->q - 1;
  std::uint32_t e = impl_->log_table[a.v] + impl_->log_table[b.v];
  if (e >= order) e -= order;
  return Elem{impl_->exp_table[e]};
}

Elem FieldCtx::inv(Elem a) const {
  require(a.v != 0, ErrorKind::DivisionByZero, "inverse of zero");
  if (impl_->k == 1) {
    // extended Euclid on integers
    std::int64_t t = 0, new_t = 1, r = impl_->p, new_r = a.v;
    while (new_r) {
      std::int64_t quot = r / new_r;
      t = std::exchange(new_t, t - quot * new_t);
      r = std::exchange(new_r, r - quot * new_r);
    }
    return from_int(t);
  }
  const std::uint32_t order = impl_->q - 1;
  const std::uint32_t l = impl_->log_table[a.v];
  return Elem{impl_->exp_table[l == 0 ? 0 : order - l]};
}

Elem FieldCtx::pow(Elem a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem FieldCtx::mul_poly(Elem a, Elem b) const {
  const std::uint32_t p = impl_->p;
  const unsigned k = impl_->k;
  Poly r = poly_rem(poly_mul(digits(a.v, p, k), digits(b.v, p, k), p), impl_->modulus, p);
  if (k == 1) r = Poly{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % p)};
  r.resize(k, 0);
  return Elem{static_cast<std::uint32_t>(undigits(r, p))};
}

std::uint32_t FieldCtx::trace(Elem a) const noexcept {
  const std::uint32_t p = impl_->p;
  if (impl_->k == 1) return a.v;
  std::uint64_t acc = 0;
  std::uint32_t x = a.v;
  for (unsigned i = 0; i < impl_->k; ++i) {
    acc += std::uint64_t{x % p} * impl_->trace_basis[i];
    x /= p;
  }
  return static_cast<std::uint32_t>(acc % p);
}

std::complex<double> FieldCtx::chi(Elem a) const noexcept {
  const double angle = 2.0 * std::numbers::pi * trace(a) / impl_->p;
  return std::polar(1.0, angle);
}

void FieldCtx::add_row(Elem a, std::span<const Elem> b, std::span<Elem> out) const {
  require(out.size() >= b.size(), ErrorKind::DimensionMismatch, "row output too short");
  if (impl_->k == 1) {
    kernels::add_mod_row(a.v, {reinterpret_cast<const std::uint32_t*>(b.data()), b.size()},
                         {reinterpret_cast<std::uint32_t*>(out.data()), out.size()}, impl_->p);
    return;
  }
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = add(a, b[i]);
}

void FieldCtx::mul_row(Elem a, std::span<const Elem> b, std::span<Elem> out) const {
  require(out.size() >= b.size(), ErrorKind::DimensionMismatch, "row output too short");
  if (impl_->k == 1) {
    kernels::mul_mod_row(a.v, {reinterpret_cast<const std::uint32_t*>(b.data()), b.size()},
                         {reinterpret_cast<std::uint32_t*>(out.data()), out.size()}, impl_->p);
    return;
  }
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = mul(a, b[i]);
}

std::vector<Elem> FieldCtx::elements() const {
  std::vector<Elem> out(impl_->q);
  for (std::uint32_t i = 0; i < impl_->q; ++i) out[i] = Elem{i};
  return out;
}

std::vector<Elem> FieldCtx::mult_subgroup(std::uint64_t d) const {
  const std::uint64_t order = impl_->q - 1;
  require(d >= 1 && order % d == 0, ErrorKind::NotADivisor,
          std::to_string(d) + " does not divide " + std::to_string(order));
  const Elem h = pow(impl_->generator, static_cast<std::int64_t>(order / d));
  std::vector<Elem> out;
  out.reserve(d);
  Elem x = one();
  for (std::uint64_t i = 0; i < d; ++i) {
    out.push_back(x);
    x = mul(x, h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FieldCtx::format(Elem a) const {
  if (impl_->k == 1) return std::to_string(a.v);
  std::string s = "(";
  auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Elem FieldCtx::parse(const std::string& text) const {
  auto bad = [&] { fail(ErrorKind::ParseError, "bad field element '" + text + "'"); };
  if (text.empty()) bad();
  if (text.front() != '(') {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &pos);
    } catch (const std::exception&) {
      bad();
    }
    if (pos != text.size()) bad();
    return from_int(v);
  }
  if (text.back() != ')') bad();
  std::vector<std::uint32_t> c;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, ';')) {
    try {
      long long v = std::stoll(item);
      if (v < 0 || v >= impl_->p) bad();
      c.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      bad();
    }
  }
  if (c.size() != impl_->k) bad();
  return from_coeffs(c);
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << impl_->q << " (p=" << impl_->p << ", k=" << impl_->k << ", modulus=";
  bool first = true;
  for (std::size_t i = impl_->modulus.size(); i-- > 0;) {
    const auto c = impl_->modulus[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  os << ")";
  return os.str();
}

Elem dot(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Elem acc = ctx.zero();
  for (std::size_t i = 0; i < x.size(); ++i) acc = ctx.add(acc, ctx.mul(x[i], y[i]));
  return acc;
}

FieldVector vec_add(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch, "vector sum of unequal lengths");
  FieldVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = ctx.add(x[i], y[i]);
  return r;
}

FieldVector vec_sub(const FieldCtx& ctx, std::span<const Elem> x, std::span<const Elem> y) {
  require(x.size() == y.size(), ErrorKind::DimensionMismatch, "vector difference of unequal lengths");
  FieldVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = ctx.sub(x[i], y[i]);
  return r;
}

FieldVector vec_neg(const FieldCtx& ctx, std::span<const Elem> x) {
  FieldVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = ctx.neg(x[i]);
  return r;
}

FieldVector vec_scale(const FieldCtx& ctx, Elem s, std::span<const Elem> x) {
  FieldVector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = ctx.mul(s, x[i]);
  return r;
}

VectorCodec::VectorCodec(const FieldCtx& ctx, unsigned n) : q_(ctx.q()), n_(n) {
  require(n >= 1, ErrorKind::InvalidSpec, "dimension must be >= 1");
  size_ = sat_pow(q_, n);
  require(size_ <= limits().vector_space, ErrorKind::LimitExceeded,
          "q^n = " + std::to_string(q_) + "^" + std::to_string(n) + " exceeds vector-space limit");
  bits_ = std::max(1, static_cast<int>(std::bit_width(size_ - 1)));
}

std::uint64_t VectorCodec::encode(std::span<const Elem> x) const {
  require(x.size() == n_, ErrorKind::DimensionMismatch, "vector length differs from codec dimension");
  std::uint64_t v = 0;
  for (Elem e : x) v = v * q_ + e.v;
  return v;
}

void VectorCodec::decode_into(std::uint64_t index, std::span<Elem> out) const {
  for (unsigned i = n_; i-- > 0;) {
    out[i] = Elem{static_cast<std::uint32_t>(index % q_)};
    index /= q_;
  }
}

FieldVector VectorCodec::decode(std::uint64_t index) const {
  FieldVector out(n_);
  decode_into(index, out);
  return out;
}

std::vector<FieldVector> enumerate_space(const FieldCtx& ctx, unsigned n) {
  VectorCodec codec(ctx, n);
  std::vector<FieldVector> out;
  out.reserve(codec.size());
  for (std::uint64_t i = 0; i < codec.size(); ++i) out.push_back(codec.decode(i));
  return out;
}

std::string format_vector(const FieldCtx& ctx, std::span<const Elem> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += ctx.format(x[i]);
  }
  return s;
}

}  // namespace heislab
