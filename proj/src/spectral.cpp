#include "heislab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "heislab/error.hpp"
#include "heislab/kernels.hpp"
#include "heislab/limits.hpp"

namespace heislab {

namespace {

std::vector<FieldVector> as_set(std::span<const FieldVector> e) {
  std::vector<FieldVector> v(e.begin(), e.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

unsigned common_dim(std::span<const FieldVector> e) {
  if (e.empty()) return 1;
  const auto n = e.front().size();
  for (const auto& v : e) require(v.size() == n, ErrorKind::DimensionMismatch, "vectors of mixed dimension");
  require(n >= 1, ErrorKind::InvalidSpec, "zero-dimensional vectors");
  return static_cast<unsigned>(n);
}

// dots[x] = x.m over all x in index order, built one coordinate at a time
// from rows of m_i * e.
void dot_row(const FieldCtx& ctx, const VectorCodec& codec, std::span<const Elem> m,
             const std::vector<Elem>& elems, std::vector<Elem>& dots, std::vector<Elem>& scratch,
             std::vector<Elem>& prod) {
  const std::size_t q = elems.size();
  dots.assign(1, ctx.zero());
  for (unsigned i = 0; i < codec.dim(); ++i) {
    ctx.mul_row(m[i], elems, prod);
    scratch.resize(dots.size() * q);
    for (std::size_t j = 0; j < dots.size(); ++j)
      ctx.add_row(dots[j], prod, std::span<Elem>(scratch).subspan(j * q, q));
    dots.swap(scratch);
  }
}

DensityTable character_sum(const DensityTable& in, bool negate, double scale) {
  const FieldCtx& ctx = in.field();
  const VectorCodec& codec = in.codec();
  const std::uint64_t size = codec.size();
  check_pairs(sat_mul(size, size), "fourier_transform");

  const std::uint32_t q = ctx.q();
  std::vector<double> chi_re(q), chi_im(q);
  for (std::uint32_t t = 0; t < q; ++t) {
    const Elem e{t};
    const auto c = ctx.chi(negate ? ctx.neg(e) : e);
    chi_re[t] = c.real();
    chi_im[t] = c.imag();
  }
  std::vector<double> f_re(size), f_im(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    f_re[i] = in[i].real();
    f_im[i] = in[i].imag();
  }

  DensityTable out(ctx, codec.dim());
  const auto elems = ctx.elements();
  std::vector<Elem> dots, scratch, prod(q), m(codec.dim());
  std::vector<double> row_re(size), row_im(size);
  for (std::uint64_t mi = 0; mi < size; ++mi) {
    codec.decode_into(mi, m);
    dot_row(ctx, codec, m, elems, dots, scratch, prod);
    for (std::uint64_t x = 0; x < size; ++x) {
      row_re[x] = chi_re[dots[x].v];
      row_im[x] = chi_im[dots[x].v];
    }
    out[mi] = scale * kernels::complex_dot(row_re, row_im, f_re, f_im);
  }
  return out;
}

}  // namespace

DensityTable::DensityTable(FieldCtx ctx, unsigned n)
    : ctx_(std::move(ctx)), codec_(ctx_, n), values_(codec_.size()) {}

DensityTable DensityTable::indicator(const FieldCtx& ctx, unsigned n, std::span<const FieldVector> set) {
  DensityTable t(ctx, n);
  for (const auto& v : set) t.values_[t.codec_.encode(v)] = 1.0;
  return t;
}

DensityTable DensityTable::constant(const FieldCtx& ctx, unsigned n, std::complex<double> value) {
  DensityTable t(ctx, n);
  std::fill(t.values_.begin(), t.values_.end(), value);
  return t;
}

double DensityTable::squared_norm() const {
  std::vector<double> re(values_.size()), im(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    re[i] = values_[i].real();
    im[i] = values_[i].imag();
  }
  return kernels::norm_sq_sum(re, im);
}

DensityTable fourier_transform(const DensityTable& f) {
  return character_sum(f, /*negate=*/true, std::pow(static_cast<double>(f.field().q()), -static_cast<double>(f.dim())));
}

DensityTable inverse_fourier_transform(const DensityTable& fhat) {
  return character_sum(fhat, /*negate=*/false, 1.0);
}

BigInt triple_count_cubic(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_set(e_in);
  common_dim(e);
  check_pairs(sat_pow(e.size(), 3), "triple_count_cubic");
  std::uint64_t t = 0;
  for (const auto& v : e)
    for (const auto& x : e)
      for (const auto& x2 : e)
        if (dot(ctx, v, vec_sub(ctx, x, x2)) == ctx.zero()) ++t;
  return big(t);
}

BigInt triple_count_histogram(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_set(e_in);
  common_dim(e);
  check_pairs(sat_mul(e.size(), e.size() + ctx.q()), "triple_count_histogram");
  std::vector<std::uint32_t> hist(ctx.q());
  unsigned __int128 total = 0;
  for (const auto& v : e) {
    std::fill(hist.begin(), hist.end(), 0u);
    for (const auto& x : e) ++hist[dot(ctx, v, x).v];
    total += kernels::sum_squares(hist);
  }
  return big128(total);
}

BigInt triple_count_direct(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_set(e_in);
  const unsigned n = common_dim(e);
  const std::uint64_t size = e.size();
  const BigInt t = size * size <= 4 * (size + ctx.q()) ? triple_count_cubic(ctx, e) : triple_count_histogram(ctx, e);
  // q T <= |E|^3 + q^{n+1} |E|
  const BigInt lhs = big(ctx.q()) * t;
  const BigInt rhs = big_pow(size, 3) + big_pow(ctx.q(), n + 1) * big(size);
  require(lhs <= rhs, ErrorKind::InvariantViolation, "orthogonal triple bound violated");
  return t;
}

double triple_count_spectral(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_set(e_in);
  const unsigned n = common_dim(e);
  const double q = ctx.q();
  const double size = static_cast<double>(e.size());
  if (e.empty()) return 0.0;
  const DensityTable ehat = fourier_transform(DensityTable::indicator(ctx, n, e));
  const VectorCodec& codec = ehat.codec();
  double acc = 0;
  for (const auto& v : e)
    for (std::uint32_t s = 1; s < ctx.q(); ++s) acc += std::norm(ehat[codec.encode(vec_scale(ctx, Elem{s}, v))]);
  return size * size * size / q + std::pow(q, 2.0 * n - 1.0) * acc;
}

LiftedMultiset::LiftedMultiset(FieldCtx ctx, unsigned n) : ctx_(std::move(ctx)), n_(n) {
  require(n >= 1, ErrorKind::InvalidSpec, "dimension must be >= 1");
  points_ = sat_pow(ctx_.q(), 2 * n + 1);
  require(points_ < (std::uint64_t{1} << 63), ErrorKind::LimitExceeded, "lifted space exceeds 63-bit keys");
}

void LiftedMultiset::add(std::span<const Elem> a, Elem b, std::uint64_t multiplicity) {
  require(a.size() == 2 * n_, ErrorKind::DimensionMismatch, "lifted point needs 2n leading coordinates");
  if (multiplicity == 0) return;
  std::uint64_t key = 0;
  for (Elem x : a) key = key * ctx_.q() + x.v;
  key = key * ctx_.q() + b.v;
  counts_[key] += multiplicity;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> LiftedMultiset::entries() const {
  return {counts_.begin(), counts_.end()};
}

std::pair<FieldVector, Elem> LiftedMultiset::decode(std::uint64_t key) const {
  const std::uint32_t q = ctx_.q();
  Elem b{static_cast<std::uint32_t>(key % q)};
  key /= q;
  FieldVector a(2 * n_);
  for (unsigned i = 2 * n_; i-- > 0;) {
    a[i] = Elem{static_cast<std::uint32_t>(key % q)};
    key /= q;
  }
  return {std::move(a), b};
}

BigInt LiftedMultiset::total() const {
  BigInt t = 0;
  for (const auto& [k, m] : counts_) t += big(m);
  return t;
}

BigInt LiftedMultiset::second_moment() const {
  BigInt t = 0;
  for (const auto& [k, m] : counts_) t += big(m) * big(m);
  return t;
}

BilinearCount bilinear_count_N(const LiftedMultiset& a, const LiftedMultiset& b) {
  require(a.field() == b.field() && a.dim() == b.dim(), ErrorKind::DimensionMismatch,
          "multisets over different spaces");
  const FieldCtx& ctx = a.field();
  const std::uint32_t q = ctx.q();

  // Group B by its vector part; within a group, last coordinates are sorted.
  struct Group {
    FieldVector c;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> tail;  // (d, m)
  };
  std::vector<Group> groups;
  std::uint64_t last_vec = ~std::uint64_t{0};
  for (const auto& [key, m] : b.entries()) {
    const std::uint64_t vec = key / q;
    if (groups.empty() || vec != last_vec) {
      groups.push_back({b.decode(key).first, {}});
      last_vec = vec;
    }
    groups.back().tail.emplace_back(static_cast<std::uint32_t>(key % q), m);
  }
  check_pairs(sat_mul(a.support_size(), groups.size()), "bilinear_count_N");

  unsigned __int128 n = 0;
  for (const auto& [key, ma] : a.entries()) {
    const auto [va, lb] = a.decode(key);
    for (const auto& g : groups) {
      const std::uint32_t want = ctx.sub(dot(ctx, va, g.c), lb).v;
      auto it = std::lower_bound(g.tail.begin(), g.tail.end(), std::make_pair(want, std::uint64_t{0}));
      if (it != g.tail.end() && it->first == want) n += static_cast<unsigned __int128>(ma) * it->second;
    }
  }

  BilinearCount out;
  out.count = big128(n);
  const BigInt size_a = a.total(), size_b = b.total();
  out.second_moment_a = a.second_moment();
  out.second_moment_b = b.second_moment();
  out.main_term = BigRat(size_a * size_b, big(q));
  out.main_term.canonicalize();
  out.error_bound = std::pow(static_cast<double>(q), a.dim()) *
                    std::sqrt(to_double(out.second_moment_a) * to_double(out.second_moment_b));

  // (q N - |A||B|)^2 <= q^{2n+2} M_A M_B, all integers.
  const BigInt dev = big(q) * out.count - size_a * size_b;
  require(dev * dev <= big_pow(q, 2 * a.dim() + 2) * out.second_moment_a * out.second_moment_b,
          ErrorKind::InvariantViolation, "bilinear count deviates beyond its error bound");
  return out;
}

LiftedPair lift_vector_system(const FieldCtx& ctx, std::span<const FieldVector> e_in) {
  const auto e = as_set(e_in);
  const unsigned n = common_dim(e);
  check_pairs(sat_pow(e.size(), 3), "lift_vector_system");
  LiftedPair out{LiftedMultiset(ctx, n), LiftedMultiset(ctx, n)};
  FieldVector head(2 * n);
  // A: (d, -b, d.c)
  for (const auto& b : e) {
    const auto nb = vec_neg(ctx, b);
    for (const auto& d : e) {
      std::copy(d.begin(), d.end(), head.begin());
      std::copy(nb.begin(), nb.end(), head.begin() + n);
      for (const auto& c : e) out.a.add(head, dot(ctx, d, c));
    }
  }
  // B: (c', a', -a'.b')
  for (const auto& c2 : e)
    for (const auto& a2 : e) {
      std::copy(c2.begin(), c2.end(), head.begin());
      std::copy(a2.begin(), a2.end(), head.begin() + n);
      for (const auto& b2 : e) out.b.add(head, ctx.neg(dot(ctx, a2, b2)));
    }
  return out;
}

}  // namespace heislab
