#include "heislab/lab/sets.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "heislab/error.hpp"
#include "heislab/flat_counter.hpp"
#include "heislab/limits.hpp"

namespace heislab::lab {

std::vector<std::uint64_t> Rng::sample(std::uint64_t n, std::uint64_t k) {
  require(k <= n, ErrorKind::SizeUnsatisfiable, "cannot draw " + std::to_string(k) + " of " + std::to_string(n));
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t q, std::uint64_t size, std::uint64_t trial) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ q);
  h = mix64(h ^ size);
  return mix64(h ^ trial);
}

namespace {

struct KindName {
  SetKind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {SetKind::Interval, "interval"},     {SetKind::Random, "random"},
    {SetKind::MultSubgroup, "mult_subgroup"}, {SetKind::Geometric, "geometric"},
    {SetKind::Subspace, "subspace"},     {SetKind::BoxBrick, "box_brick"},
    {SetKind::GaussianGrid, "gaussian_grid"}, {SetKind::Explicit, "explicit"},
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_spec(const std::string& why) { fail(ErrorKind::InvalidSpec, why); }

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_spec("parameter " + key + " is not an integer: '" + text + "'");
  return v;
}

std::vector<std::uint64_t> sample_range(Rng& rng, std::uint64_t lo, std::uint64_t n, std::uint64_t k) {
  require(k <= n, ErrorKind::SizeUnsatisfiable,
          "requested " + std::to_string(k) + " elements but only " + std::to_string(n) + " are available");
  auto v = rng.sample(n, k);
  for (auto& x : v) x += lo;
  return v;
}

void expect_size(const SetSpec& spec, std::uint64_t got) {
  if (spec.has("size") && spec.get("size", 0) != got)
    fail(ErrorKind::SizeUnsatisfiable, spec.to_string() + " produces " + std::to_string(got) + " elements, not " +
                                           std::to_string(spec.get("size", 0)));
}

std::vector<Elem> to_elems(const std::vector<std::uint64_t>& idx) {
  std::vector<Elem> out;
  out.reserve(idx.size());
  for (auto v : idx) out.push_back(Elem{static_cast<std::uint32_t>(v)});
  return out;
}

// Reduced row echelon basis; returns true if v enlarged the span.
bool extend_basis(const FieldCtx& ctx, std::vector<FieldVector>& basis, std::vector<std::size_t>& pivots, FieldVector v) {
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const Elem c = v[pivots[r]];
    if (c == ctx.zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ctx.sub(v[j], ctx.mul(c, basis[r][j]));
  }
  const auto it = std::find_if(v.begin(), v.end(), [&](Elem e) { return e != ctx.zero(); });
  if (it == v.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
  v = vec_scale(ctx, ctx.inv(v[pivot]), v);
  for (auto& row : basis) {
    const Elem c = row[pivot];
    if (c == ctx.zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) row[j] = ctx.sub(row[j], ctx.mul(c, v[j]));
  }
  basis.push_back(std::move(v));
  pivots.push_back(pivot);
  return true;
}

std::vector<FieldVector> span_of(const FieldCtx& ctx, unsigned n, const std::vector<FieldVector>& basis) {
  const VectorCodec coeffs(ctx, static_cast<unsigned>(std::max<std::size_t>(basis.size(), 1)));
  std::vector<FieldVector> out;
  const std::uint64_t total = basis.empty() ? 1 : coeffs.size();
  out.reserve(total);
  FieldVector lambda(basis.size());
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!basis.empty()) coeffs.decode_into(i, lambda);
    FieldVector v(n, ctx.zero());
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (unsigned j = 0; j < n; ++j) v[j] = ctx.add(v[j], ctx.mul(lambda[r], basis[r][j]));
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> coordinate_subset(const FieldCtx& ctx, Rng& rng, std::uint64_t size, bool full) {
  std::vector<std::uint32_t> out;
  if (full) size = ctx.q();
  for (auto v : sample_range(rng, 0, ctx.q(), size)) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

}  // namespace

std::string_view to_string(SetKind kind) noexcept {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "unknown";
}

SetSpec SetSpec::parse(const std::string& text) {
  SetSpec spec;
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const auto it = std::find_if(std::begin(kKinds), std::end(kKinds), [&](const KindName& k) { return k.name == name; });
  if (it == std::end(kKinds)) bad_spec("unknown set family '" + name + "'");
  spec.kind_ = it->kind;
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (spec.kind_ == SetKind::Explicit) {
    if (rest.empty()) bad_spec("explicit set needs items");
    spec.items_ = split(rest, '|');
    return spec;
  }
  if (rest.empty()) return spec;
  for (const auto& kv : split(rest, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size()) bad_spec("expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (!spec.params_.emplace(key, value).second) bad_spec("parameter '" + key + "' given twice");
    // g may be an extension-field element; everything else is an integer
    if (key != "g") (void)parse_number<std::int64_t>(key, value);
  }
  static const std::map<SetKind, std::set<std::string>> allowed = {
      {SetKind::Interval, {"lo", "hi", "size"}},
      {SetKind::Random, {"size", "nonzero"}},
      {SetKind::MultSubgroup, {"d", "size"}},
      {SetKind::Geometric, {"g", "size"}},
      {SetKind::Subspace, {"dim", "subfield", "size"}},
      {SetKind::BoxBrick, {"x", "y", "z", "full", "size"}},
      {SetKind::GaussianGrid, {"r", "size"}},
  };
  for (const auto& [k, v] : spec.params_)
    if (!allowed.at(spec.kind_).count(k)) bad_spec("parameter '" + k + "' does not apply to " + name);
  return spec;
}

std::string SetSpec::to_string() const {
  std::string out(lab::to_string(kind_));
  if (kind_ == SetKind::Explicit) {
    out += ':';
    for (std::size_t i = 0; i < items_.size(); ++i) out += (i ? "|" : "") + items_[i];
    return out;
  }
  char sep = ':';
  for (const auto& [k, v] : params_) {
    out += sep + k + "=" + v;
    sep = ',';
  }
  return out;
}

std::uint64_t SetSpec::get(const std::string& key, std::uint64_t fallback) const {
  auto it = params_.find(key);
  return it == params_.end() ? fallback : parse_number<std::uint64_t>(key, it->second);
}

std::int64_t SetSpec::get_signed(const std::string& key, std::int64_t fallback) const {
  auto it = params_.find(key);
  return it == params_.end() ? fallback : parse_number<std::int64_t>(key, it->second);
}

std::optional<std::string> SetSpec::raw(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) return std::nullopt;
  return it->second;
}

SetSpec SetSpec::with_size(std::uint64_t size) const {
  SetSpec out = *this;
  if (kind_ == SetKind::MultSubgroup) {
    out.params_.erase("size");
    out.params_["d"] = std::to_string(size);
  } else if (kind_ == SetKind::Interval) {
    out.params_.erase("hi");
    out.params_["size"] = std::to_string(size);
  } else {
    out.params_["size"] = std::to_string(size);
  }
  return out;
}

std::vector<Elem> gen_scalars(const FieldCtx& ctx, const SetSpec& spec, Rng& rng) {
  const std::uint32_t q = ctx.q();
  std::vector<Elem> out;
  switch (spec.kind()) {
    case SetKind::Interval: {
      const std::uint64_t lo = spec.get("lo", 1);
      std::uint64_t hi;
      if (spec.has("hi")) hi = spec.get("hi", 0);
      else if (spec.has("size")) hi = lo + spec.get("size", 0) - 1;
      else bad_spec("interval needs hi or size");
      if (spec.has("size") && spec.has("hi") && hi - lo + 1 != spec.get("size", 0))
        fail(ErrorKind::SizeUnsatisfiable, "interval bounds disagree with size");
      require(lo <= hi + 1, ErrorKind::InvalidSpec, "interval has lo > hi");
      require(hi < q, ErrorKind::SizeUnsatisfiable, "interval exceeds the field");
      for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(Elem{static_cast<std::uint32_t>(v)});
      break;
    }
    case SetKind::Random: {
      require(spec.has("size"), ErrorKind::InvalidSpec, "random needs size");
      const bool nonzero = spec.get("nonzero", 1) != 0;
      out = to_elems(sample_range(rng, nonzero ? 1 : 0, nonzero ? q - 1 : q, spec.get("size", 0)));
      break;
    }
    case SetKind::MultSubgroup: {
      const std::uint64_t d = spec.has("d") ? spec.get("d", 0) : spec.get("size", 0);
      require(d >= 1, ErrorKind::InvalidSpec, "mult_subgroup needs d >= 1");
      out = ctx.mult_subgroup(d);
      break;
    }
    case SetKind::Geometric: {
      require(spec.has("size"), ErrorKind::InvalidSpec, "geometric needs size");
      const Elem g = spec.has("g") ? ctx.parse(*spec.raw("g")) : ctx.from_int(2);
      require(g != ctx.zero(), ErrorKind::InvalidSpec, "geometric ratio must be nonzero");
      const std::uint64_t size = spec.get("size", 0);
      std::set<Elem> seen;
      Elem x = ctx.one();
      for (std::uint64_t i = 0; i < size; ++i) {
        if (!seen.insert(x).second)
          fail(ErrorKind::SizeUnsatisfiable, "ratio has order " + std::to_string(i) + " < " + std::to_string(size));
        x = ctx.mul(x, g);
      }
      out.assign(seen.begin(), seen.end());
      break;
    }
    case SetKind::Explicit:
      for (const auto& item : spec.items()) out.push_back(ctx.parse(item));
      break;
    default:
      bad_spec(std::string(to_string(spec.kind())) + " does not describe a scalar set");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (spec.kind() != SetKind::Random && spec.kind() != SetKind::Interval) expect_size(spec, out.size());
  return out;
}

std::vector<FieldVector> gen_vectors(const FieldCtx& ctx, unsigned n, const SetSpec& spec, Rng& rng) {
  require(n >= 1, ErrorKind::InvalidSpec, "dimension must be >= 1");
  const VectorCodec codec(ctx, n);
  std::vector<FieldVector> out;
  switch (spec.kind()) {
    case SetKind::Random: {
      require(spec.has("size"), ErrorKind::InvalidSpec, "random needs size");
      const bool nonzero = spec.get("nonzero", 0) != 0;
      for (auto i : sample_range(rng, nonzero ? 1 : 0, nonzero ? codec.size() - 1 : codec.size(), spec.get("size", 0)))
        out.push_back(codec.decode(i));
      break;
    }
    case SetKind::Interval: {
      // {lo..hi}^n by element index
      const auto coords = gen_scalars(ctx, spec, rng);
      const std::uint64_t total = sat_pow(coords.size(), n);
      check_pairs(total, "interval box");
      FieldVector v(n);
      for (std::uint64_t i = 0; i < total; ++i) {
        std::uint64_t r = i;
        for (unsigned j = n; j-- > 0;) {
          v[j] = coords[r % coords.size()];
          r /= coords.size();
        }
        out.push_back(v);
      }
      return out;
    }
    case SetKind::Subspace: {
      if (spec.get("subfield", 0) != 0) {
        // F_p^n: every coordinate in the prime subfield
        for (std::uint64_t i = 0; i < codec.size(); ++i) {
          FieldVector v = codec.decode(i);
          if (std::all_of(v.begin(), v.end(), [&](Elem e) { return e.v < ctx.p(); })) out.push_back(std::move(v));
        }
      } else {
        const std::uint64_t dim = spec.get("dim", 1);
        require(dim <= n, ErrorKind::SizeUnsatisfiable, "subspace dimension exceeds n");
        std::vector<FieldVector> basis;
        std::vector<std::size_t> pivots;
        while (basis.size() < dim) extend_basis(ctx, basis, pivots, codec.decode(rng.below(codec.size())));
        out = span_of(ctx, n, basis);
      }
      expect_size(spec, out.size());
      return out;
    }
    case SetKind::Explicit:
      for (const auto& item : spec.items()) {
        FieldVector v;
        for (const auto& c : split(item, ',')) v.push_back(ctx.parse(c));
        require(v.size() == n, ErrorKind::DimensionMismatch, "explicit vector '" + item + "' is not in dimension " + std::to_string(n));
        out.push_back(std::move(v));
      }
      break;
    default:
      bad_spec(std::string(to_string(spec.kind())) + " does not describe a vector set");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (spec.kind() == SetKind::Explicit) expect_size(spec, out.size());
  return out;
}

Brick gen_brick(const FieldCtx& ctx, unsigned n, const SetSpec& spec, Rng& rng) {
  if (spec.kind() != SetKind::BoxBrick) {
    auto e = gen_vectors(ctx, n, spec, rng);
    return Brick::general(ctx, n, e, e, {ctx.zero()});
  }
  const bool full = spec.get("full", 0) != 0;
  if (!full) require(spec.has("x") && spec.has("y") && spec.has("z"), ErrorKind::InvalidSpec, "box_brick needs x, y, z or full=1");
  std::vector<std::vector<Elem>> xs(n), ys(n);
  for (unsigned i = 0; i < n; ++i) {
    for (auto v : coordinate_subset(ctx, rng, spec.get("x", 0), full)) xs[i].push_back(Elem{v});
    for (auto v : coordinate_subset(ctx, rng, spec.get("y", 0), full)) ys[i].push_back(Elem{v});
  }
  std::vector<Elem> zs;
  for (auto v : coordinate_subset(ctx, rng, spec.get("z", 0), full)) zs.push_back(Elem{v});
  return Brick::box(ctx, std::move(xs), std::move(ys), std::move(zs));
}

std::vector<ComplexRational> gen_complex(const SetSpec& spec, Rng& rng) {
  std::vector<ComplexRational> out;
  switch (spec.kind()) {
    case SetKind::Interval: {
      const std::int64_t lo = spec.get_signed("lo", 1);
      std::int64_t hi;
      if (spec.has("hi")) hi = spec.get_signed("hi", 0);
      else if (spec.has("size")) hi = lo + static_cast<std::int64_t>(spec.get("size", 0)) - 1;
      else bad_spec("interval needs hi or size");
      require(lo <= hi + 1, ErrorKind::InvalidSpec, "interval has lo > hi");
      check_pairs(static_cast<std::uint64_t>(hi - lo + 1), "complex interval");
      for (std::int64_t v = lo; v <= hi; ++v) out.emplace_back(static_cast<long>(v));
      break;
    }
    case SetKind::GaussianGrid:
    case SetKind::Random: {
      // nonzero a + b i with |a|, |b| <= r
      const std::int64_t r = spec.get_signed("r", 2);
      require(r >= 1 && r <= 1000, ErrorKind::InvalidSpec, "gaussian grid radius must lie in [1, 1000]");
      std::vector<ComplexRational> grid;
      for (std::int64_t a = -r; a <= r; ++a)
        for (std::int64_t b = -r; b <= r; ++b)
          if (a || b) grid.emplace_back(BigRat(static_cast<long>(a)), BigRat(static_cast<long>(b)));
      std::sort(grid.begin(), grid.end());
      if (!spec.has("size")) {
        require(spec.kind() == SetKind::GaussianGrid, ErrorKind::InvalidSpec, "random needs size");
        out = std::move(grid);
      } else {
        for (auto i : sample_range(rng, 0, grid.size(), spec.get("size", 0))) out.push_back(grid[i]);
      }
      break;
    }
    case SetKind::Explicit:
      for (const auto& item : spec.items()) out.push_back(ComplexRational::parse(item));
      break;
    default:
      bad_spec(std::string(to_string(spec.kind())) + " does not describe a complex set");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (spec.kind() == SetKind::Explicit) expect_size(spec, out.size());
  return out;
}

}  // namespace heislab::lab
