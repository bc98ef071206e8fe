#include "heislab/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "heislab/error.hpp"
#include "heislab/flat_counter.hpp"
#include "heislab/limits.hpp"

namespace heislab {

HeisPoint heis_identity(unsigned n) { return {FieldVector(n), FieldVector(n), Elem{0}}; }

HeisPoint heis_mul(const FieldCtx& ctx, const HeisPoint& a, const HeisPoint& b) {
  require(a.x.size() == a.y.size() && b.x.size() == b.y.size() && a.x.size() == b.x.size(),
          ErrorKind::DimensionMismatch, "Heisenberg points of different degree");
  HeisPoint r;
  r.x = vec_add(ctx, a.x, b.x);
  r.y = vec_add(ctx, a.y, b.y);
  r.z = ctx.add(ctx.add(a.z, b.z), dot(ctx, a.x, b.y));
  return r;
}

HeisPoint heis_inv(const FieldCtx& ctx, const HeisPoint& a) {
  require(a.x.size() == a.y.size(), ErrorKind::DimensionMismatch, "malformed Heisenberg point");
  return {vec_neg(ctx, a.x), vec_neg(ctx, a.y), ctx.add(ctx.neg(a.z), dot(ctx, a.x, a.y))};
}

std::string format_point(const FieldCtx& ctx, const HeisPoint& a) {
  return format_vector(ctx, a.x) + "|" + format_vector(ctx, a.y) + "|" + ctx.format(a.z);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

HeisPoint parse_point(const FieldCtx& ctx, const std::string& text) {
  auto parts = split(text, '|');
  require(parts.size() == 3, ErrorKind::ParseError, "expected x|y|z in '" + text + "'");
  HeisPoint r;
  for (auto& s : split(parts[0], ',')) r.x.push_back(ctx.parse(s));
  for (auto& s : split(parts[1], ',')) r.y.push_back(ctx.parse(s));
  require(r.x.size() == r.y.size(), ErrorKind::DimensionMismatch, "x and y lengths differ");
  r.z = ctx.parse(parts[2]);
  return r;
}

HeisCodec::HeisCodec(const FieldCtx& ctx, unsigned n)
    : vec_(ctx, n),
      q_(ctx.q()), z_bits_(std::max(1, static_cast<int>(std::bit_width(ctx.q() - 1u)))) {
  require(2 * vec_.bits() + z_bits_ <= 64, ErrorKind::LimitExceeded, "Heisenberg key exceeds 64 bits");
}

std::uint64_t HeisCodec::encode(const HeisPoint& a) const {
  return pack(vec_.encode(a.x), vec_.encode(a.y), a.z);
}

HeisPoint HeisCodec::decode(std::uint64_t key) const {
  const std::uint64_t vmask = (std::uint64_t{1} << vec_.bits()) - 1;
  const std::uint64_t zmask = (std::uint64_t{1} << z_bits_) - 1;
  Elem z{static_cast<std::uint32_t>(key & zmask)};
  key >>= z_bits_;
  const std::uint64_t yi = key & vmask;
  const std::uint64_t xi = key >> vec_.bits();
  return {vec_.decode(xi), vec_.decode(yi), z};
}

namespace {

std::vector<Elem> dedup(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<FieldVector> dedup(std::vector<FieldVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_elems(const FieldCtx& ctx, const std::vector<Elem>& v) {
  for (Elem e : v) require(ctx.valid(e), ErrorKind::InvalidSpec, "element outside the field");
}

std::vector<FieldVector> cartesian(const std::vector<std::vector<Elem>>& factors) {
  std::vector<FieldVector> out{FieldVector{}};
  for (const auto& f : factors) {
    std::vector<FieldVector> next;
    next.reserve(out.size() * f.size());
    for (const auto& prefix : out)
      for (Elem e : f) {
        next.push_back(prefix);
        next.back().push_back(e);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Brick Brick::box(const FieldCtx& ctx, std::vector<std::vector<Elem>> xs,
                 std::vector<std::vector<Elem>> ys, std::vector<Elem> zs) {
  require(!xs.empty() && xs.size() == ys.size(), ErrorKind::DimensionMismatch,
          "box brick needs n >= 1 factors for both E and F");
  Brick b(ctx, static_cast<unsigned>(xs.size()));
  b.kind_ = Kind::Box;
  for (auto& f : xs) {
    check_elems(ctx, f);
    f = dedup(std::move(f));
  }
  for (auto& f : ys) {
    check_elems(ctx, f);
    f = dedup(std::move(f));
  }
  check_elems(ctx, zs);
  [[maybe_unused]] VectorCodec space(ctx, b.n_);  // rejects q^n above the limit before enumerating
  b.e_ = cartesian(xs);
  b.f_ = cartesian(ys);
  b.xs_ = std::move(xs);
  b.ys_ = std::move(ys);
  b.a_ = dedup(std::move(zs));
  return b;
}

Brick Brick::general(const FieldCtx& ctx, unsigned n, std::vector<FieldVector> e,
                     std::vector<FieldVector> f, std::vector<Elem> a) {
  require(n >= 1, ErrorKind::InvalidSpec, "dimension must be >= 1");
  for (const auto* part : {&e, &f})
    for (const auto& v : *part) {
      require(v.size() == n, ErrorKind::DimensionMismatch, "vector of wrong dimension in brick");
      check_elems(ctx, v);
    }
  check_elems(ctx, a);
  Brick b(ctx, n);
  b.kind_ = Kind::General;
  b.e_ = dedup(std::move(e));
  b.f_ = dedup(std::move(f));
  b.a_ = dedup(std::move(a));
  return b;
}

Brick Brick::full(const FieldCtx& ctx, unsigned n) {
  std::vector<std::vector<Elem>> all(n, ctx.elements());
  return box(ctx, all, all, ctx.elements());
}

std::uint64_t Brick::size() const noexcept {
  return sat_mul(sat_mul(e_.size(), f_.size()), a_.size());
}

std::optional<std::uint64_t> Brick::x_max() const noexcept {
  if (kind_ != Kind::Box) return std::nullopt;
  std::uint64_t m = 0;
  for (const auto& f : xs_) m = std::max<std::uint64_t>(m, f.size());
  return m;
}

std::optional<std::uint64_t> Brick::y_max() const noexcept {
  if (kind_ != Kind::Box) return std::nullopt;
  std::uint64_t m = 0;
  for (const auto& f : ys_) m = std::max<std::uint64_t>(m, f.size());
  return m;
}

std::vector<HeisPoint> Brick::points() const {
  std::vector<HeisPoint> out;
  out.reserve(size());
  for (const auto& x : e_)
    for (const auto& y : f_)
      for (Elem z : a_) out.push_back({x, y, z});
  return out;
}

bool ProductSet::contains(const HeisPoint& g) const { return representations(g) > 0; }

std::uint64_t ProductSet::representations(const HeisPoint& g) const {
  if (g.x.size() != codec.dim() || g.y.size() != codec.dim()) return 0;
  const std::uint64_t key = codec.encode(g);
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return 0;
  return counts[static_cast<std::size_t>(it - keys.begin())];
}

std::vector<HeisPoint> ProductSet::points() const {
  std::vector<HeisPoint> out;
  out.reserve(keys.size());
  for (auto k : keys) out.push_back(codec.decode(k));
  return out;
}

namespace {

ProductSet finish(HeisCodec codec, const FlatCounter& counter, std::uint64_t pairs) {
  ProductSet out{std::move(codec), {}, {}, big(pairs), 0};
  auto sorted = counter.sorted();
  out.keys.reserve(sorted.size());
  out.counts.reserve(sorted.size());
  for (auto [k, c] : sorted) {
    out.keys.push_back(k);
    out.counts.push_back(c);
    out.collision_energy += big(c) * big(c);
  }
  return out;
}

// Counts over the mixed-radix index (x * Q + y) * q + z, Q = q^n. Index order
// matches packed-key order, so a forward scan yields sorted keys.
class DenseCounter {
 public:
  DenseCounter(std::uint64_t cells, std::uint32_t q) : counts_(cells, 0), q_(q) {}
  void add(std::uint64_t index, std::uint64_t times) { counts_[index] += static_cast<std::uint32_t>(times); }
  void merge(const DenseCounter& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  }
  ProductSet finish(HeisCodec codec, std::uint64_t pairs) const {
    ProductSet out{std::move(codec), {}, {}, big(pairs), 0};
    const std::uint64_t side = out.codec.vectors().size();
    unsigned __int128 energy = 0;
    for (std::uint64_t i = 0; i < counts_.size(); ++i) {
      const std::uint64_t c = counts_[i];
      if (!c) continue;
      const std::uint64_t z = i % q_, xy = i / q_;
      out.keys.push_back(out.codec.pack(xy / side, xy % side, Elem{static_cast<std::uint32_t>(z)}));
      out.counts.push_back(c);
      energy += static_cast<unsigned __int128>(c) * c;
    }
    out.collision_energy = big128(energy);
    return out;
  }

 private:
  std::vector<std::uint32_t> counts_;
  std::uint32_t q_;
};

constexpr std::uint64_t kDenseCells = std::uint64_t{1} << 24;

}  // namespace

ProductSet product_set(const Brick& b1, const Brick& b2, unsigned workers) {
  require(b1.field() == b2.field(), ErrorKind::DimensionMismatch, "bricks over different fields");
  require(b1.dim() == b2.dim(), ErrorKind::DimensionMismatch, "bricks of different degree");
  const FieldCtx& ctx = b1.field();
  const unsigned n = b1.dim();
  HeisCodec codec(ctx, n);
  const VectorCodec& vc = codec.vectors();

  const std::uint64_t pairs = sat_mul(b1.size(), b2.size());
  check_pairs(pairs, "product_set");

  const auto& e1 = b1.e_part();
  const auto& f1 = b1.f_part();
  const auto& e2 = b2.e_part();
  const auto& f2 = b2.f_part();

  // Tables of x+x' and y+y' indices and the x.y' cross terms.
  std::vector<std::uint64_t> xsum(e1.size() * e2.size()), ysum(f1.size() * f2.size());
  std::vector<Elem> cross(e1.size() * f2.size());
  for (std::size_t i = 0; i < e1.size(); ++i) {
    for (std::size_t j = 0; j < e2.size(); ++j) xsum[i * e2.size() + j] = vc.encode(vec_add(ctx, e1[i], e2[j]));
    for (std::size_t v = 0; v < f2.size(); ++v) cross[i * f2.size() + v] = dot(ctx, e1[i], f2[v]);
  }
  for (std::size_t u = 0; u < f1.size(); ++u)
    for (std::size_t v = 0; v < f2.size(); ++v) ysum[u * f2.size() + v] = vc.encode(vec_add(ctx, f1[u], f2[v]));

  // The centre coordinate is z + z' + x.y', so only the sumset A1 + A2 matters.
  std::vector<std::uint64_t> zhist(ctx.q(), 0);
  for (Elem z1 : b1.a_part())
    for (Elem z2 : b2.a_part()) ++zhist[ctx.add(z1, z2).v];
  std::vector<std::pair<Elem, std::uint64_t>> zsum;
  for (std::uint32_t z = 0; z < ctx.q(); ++z)
    if (zhist[z]) zsum.emplace_back(Elem{z}, zhist[z]);

  const std::uint64_t side = vc.size(), q = ctx.q();
  auto run = [&](std::size_t begin, std::size_t end, auto& counter, bool dense) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < e2.size(); ++j) {
        const std::uint64_t xi = xsum[i * e2.size() + j];
        for (std::size_t u = 0; u < f1.size(); ++u)
          for (std::size_t v = 0; v < f2.size(); ++v) {
            const std::uint64_t yi = ysum[u * f2.size() + v];
            const Elem d = cross[i * f2.size() + v];
            if (dense) {
              const std::uint64_t base = (xi * side + yi) * q;
              for (auto [z, c] : zsum) counter.add(base + ctx.add(z, d).v, c);
            } else {
              const std::uint64_t base = codec.pack(xi, yi, Elem{0});
              for (auto [z, c] : zsum) counter.add(base | ctx.add(z, d).v, c);
            }
          }
      }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, e1.size()))));
  const std::size_t chunk = (e1.size() + workers - 1) / workers;
  auto partitioned = [&](auto& parts, bool dense) {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(e1.size(), w * chunk);
      const std::size_t end = std::min(e1.size(), begin + chunk);
      threads.emplace_back([&, w, begin, end] { run(begin, end, parts[w], dense); });
    }
    for (auto& t : threads) t.join();
    for (std::size_t w = 1; w < parts.size(); ++w) parts[0].merge(parts[w]);
  };

  const std::uint64_t cells = sat_mul(sat_mul(side, side), q);
  if (pairs <= std::numeric_limits<std::uint32_t>::max() && sat_mul(cells, workers) <= kDenseCells) {
    std::vector<DenseCounter> parts(workers, DenseCounter(cells, ctx.q()));
    if (workers == 1) run(0, e1.size(), parts[0], true);
    else partitioned(parts, true);
    return parts[0].finish(std::move(codec), pairs);
  }
  std::vector<FlatCounter> parts(workers);
  if (workers == 1) {
    parts[0] = FlatCounter(std::min<std::uint64_t>(pairs, std::uint64_t{1} << 20));
    run(0, e1.size(), parts[0], false);
  } else {
    partitioned(parts, false);
  }
  return finish(std::move(codec), parts[0], pairs);
}

ProductSet product_set(const FieldCtx& ctx, std::span<const HeisPoint> s1, std::span<const HeisPoint> s2) {
  unsigned n = 1;
  if (!s1.empty()) n = static_cast<unsigned>(s1.front().x.size());
  else if (!s2.empty()) n = static_cast<unsigned>(s2.front().x.size());
  HeisCodec codec(ctx, n);
  const std::uint64_t pairs = sat_mul(s1.size(), s2.size());
  check_pairs(pairs, "product_set");

  // Deduplicate the inputs: products of a set, not of a sequence.
  auto keys_of = [&](std::span<const HeisPoint> s) {
    std::vector<std::uint64_t> k;
    k.reserve(s.size());
    for (const auto& g : s) {
      require(g.x.size() == n && g.y.size() == n, ErrorKind::DimensionMismatch, "mixed degrees");
      k.push_back(codec.encode(g));
    }
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
  };
  const auto k1 = keys_of(s1), k2 = keys_of(s2);
  FlatCounter counter(std::min<std::uint64_t>(pairs, std::uint64_t{1} << 20));
  for (auto a : k1) {
    const HeisPoint ga = codec.decode(a);
    for (auto b : k2) counter.add(codec.encode(heis_mul(ctx, ga, codec.decode(b))));
  }
  return finish(std::move(codec), counter, sat_mul(k1.size(), k2.size()));
}

namespace {

// keys must be sorted and distinct, so a coset is full iff it holds q keys.
std::uint64_t count_full_cosets(const HeisCodec& codec, std::span<const std::uint64_t> keys) {
  std::uint64_t full = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && codec.coset_of(keys[j]) == codec.coset_of(keys[i])) ++j;
    if (j - i == codec.field_order()) ++full;
    i = j;
  }
  return full;
}

}  // namespace

std::uint64_t coset_count(const ProductSet& s) { return count_full_cosets(s.codec, s.keys); }

std::uint64_t coset_count(const FieldCtx& ctx, std::span<const HeisPoint> s) {
  if (s.empty()) return 0;
  HeisCodec codec(ctx, static_cast<unsigned>(s.front().x.size()));
  std::vector<std::uint64_t> keys;
  keys.reserve(s.size());
  for (const auto& g : s) keys.push_back(codec.encode(g));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return count_full_cosets(codec, keys);
}

ShkredovCheck shkredov_condition(const Brick& b, std::uint64_t p) {
  require(b.kind() == Brick::Kind::Box, ErrorKind::InvalidSpec, "box brick required");
  require(b.dim() % 2 == 0, ErrorKind::OddDimension, "n must be even, got " + std::to_string(b.dim()));
  const double x = static_cast<double>(*b.x_max());
  const double y = static_cast<double>(*b.y_max());
  const double z = static_cast<double>(b.a_part().size());
  const double pd = static_cast<double>(p);
  ShkredovCheck c;
  c.lhs = x * y;
  if (z > 0) {
    const double inner = x * y / (pd * std::sqrt(z));
    c.rhs = std::pow(pd, 1.5) * std::pow(inner, std::pow(2.0, -static_cast<double>(b.dim()) / 2.0));
  } else {
    c.rhs = std::numeric_limits<double>::infinity();
  }
  c.main_inequality = c.lhs >= c.rhs;
  c.z_le_xy = z <= x * y;
  c.x_le_zy = x <= z * y;
  c.y_le_zx = y <= z * x;
  c.holds = c.main_inequality && c.z_le_xy && c.x_le_zy && c.y_le_zx;
  return c;
}

}  // namespace heislab
