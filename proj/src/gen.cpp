#include "certhull/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "certhull/random.hpp"

namespace certhull {

namespace {

__extension__ typedef unsigned __int128 U128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<U128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e; e >>= 1, b = mul_mod(b, b, m))
    if (e & 1) r = mul_mod(r, b, m);
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// y = a x^2 + b x + c over Z_p, recentred so coordinates lie in [-h, h].
struct ModCurve {
  std::uint64_t p, a, b, c;
  Coord h;

  ModCurve(Coord range, SplitMix64& rng) {
    p = prime_at_most(2 * static_cast<std::uint64_t>(range) + 1);
    h = static_cast<Coord>((p - 1) / 2);
    a = 1 + rng.below(p - 1);
    b = rng.below(p);
    c = rng.below(p);
  }

  Point at(std::uint64_t x) const {
    const std::uint64_t y = (mul_mod(a, mul_mod(x, x, p), p) + mul_mod(b, x, p) + c) % p;
    return {static_cast<Coord>(x) - h, static_cast<Coord>(y) - h};
  }
};

Wide norm2(const Point& p) { return Wide{p.x} * p.x + Wide{p.y} * p.y; }

void check_range(const GenSpec& spec) {
  if (spec.coord_range < 1 || spec.coord_range >= kCoordLimit / 2)
    throw std::invalid_argument("coord_range must lie in [1, 2^60)");
}

std::vector<Point> gen_disk(const GenSpec& spec, SplitMix64& rng) {
  check_range(spec);
  ModCurve curve(spec.coord_range, rng);
  const Wide r2 = Wide{curve.h} * curve.h;
  std::unordered_set<std::uint64_t> used;
  std::vector<Point> out;
  const std::size_t budget = 64 * spec.n + 4096;
  for (std::size_t draws = 0; out.size() < spec.n; ++draws) {
    if (draws == budget) throw UnsatisfiableSpec("disk: range too small for n points");
    const std::uint64_t x = rng.below(curve.p);
    if (used.contains(x)) continue;
    const Point q = curve.at(x);
    if (norm2(q) > r2) continue;
    used.insert(x);
    out.push_back(q);
  }
  return out;
}

// Upper half plane first, then counterclockwise.
bool angle_less(const Point& a, const Point& b) {
  auto half = [](const Point& p) { return p.y > 0 || (p.y == 0 && p.x > 0) ? 0 : 1; };
  if (half(a) != half(b)) return half(a) < half(b);
  return Wide{a.x} * b.y - Wide{a.y} * b.x > 0;
}

Point circle_point(Coord radius, SplitMix64& rng) {
  constexpr std::int64_t v = std::int64_t{1} << 20;
  const std::int64_t u = rng.between(-v, v);
  const Wide den = Wide{v} * v + Wide{u} * u;
  auto scaled = [&](Wide num) {
    const Wide t = Wide{radius} * num * 2 + (num >= 0 ? den : -den);
    return static_cast<Coord>(t / (2 * den));
  };
  Point q{scaled(Wide{v} * v - Wide{u} * u), scaled(Wide{u} * v * 2)};
  if (rng.below(2)) q = {-q.x, -q.y};
  return q;
}

std::vector<Point> gen_convex(const GenSpec& spec, SplitMix64& rng) {
  check_range(spec);
  std::vector<Point> pts;
  const std::size_t budget = 64 * spec.n + 4096;
  std::size_t draws = 0;
  DecisionCounter scratch;
  while (true) {
    while (pts.size() < spec.n) {
      if (draws++ == budget) throw UnsatisfiableSpec("convex: range too small for n points");
      pts.push_back(circle_point(spec.coord_range, rng));
    }
    std::sort(pts.begin(), pts.end(), angle_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() >= 3) {
      std::vector<Point> kept;
      const std::size_t m = pts.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Point& prev = pts[(i + m - 1) % m];
        const Point& next = pts[(i + 1) % m];
        if (orient(prev, pts[i], next, scratch) > 0) kept.push_back(pts[i]);
      }
      if (kept.size() == m) break;
      pts = std::move(kept);
      continue;
    }
    if (pts.size() == spec.n) break;
  }
  shuffle<Point>(pts, rng);
  return pts;
}

std::vector<Point> gen_clustered(const GenSpec& spec, SplitMix64& rng) {
  check_range(spec);
  ModCurve curve(spec.coord_range, rng);
  std::unordered_set<std::uint64_t> used;
  std::vector<Point> out;
  const std::size_t k = std::min(spec.anchors, spec.n);
  const Coord h = curve.h;

  const auto root = static_cast<Coord>(std::sqrt(static_cast<double>(curve.p)));
  const Coord w = std::max<Coord>(h / 64, 2 * root + 1);
  const double phase = static_cast<double>(rng.below(1u << 20)) / (1u << 20);
  for (std::size_t j = 0; j < k; ++j) {
    const double theta = 2 * std::numbers::pi * (static_cast<double>(j) + phase) /
                         static_cast<double>(k);
    const auto tx = static_cast<Coord>(std::llround(0.9 * static_cast<double>(h) * std::cos(theta)));
    const auto ty = static_cast<Coord>(std::llround(0.9 * static_cast<double>(h) * std::sin(theta)));
    const Coord lo = std::max<Coord>(-h, tx - w), hi = std::min<Coord>(h, tx + w);
    bool placed = false;
    for (std::size_t draws = 0; draws < (std::size_t{1} << 18) && !placed; ++draws) {
      const auto x = static_cast<std::uint64_t>(rng.between(lo, hi) + h);
      if (used.contains(x)) continue;
      const Point q = curve.at(x);
      if (q.y < ty - w || q.y > ty + w) continue;
      used.insert(x);
      out.push_back(q);
      placed = true;
    }
    if (!placed) throw UnsatisfiableSpec("clustered: no curve point near anchor " + std::to_string(j));
  }

  const Coord r = std::max<Coord>(1, h / 16);
  const Wide r2 = Wide{r} * r;
  const std::size_t budget = 256 * spec.n + 4096;
  for (std::size_t draws = 0; out.size() < spec.n; ++draws) {
    if (draws == budget) throw UnsatisfiableSpec("clustered: ball too small for n points");
    const auto x = static_cast<std::uint64_t>(rng.between(-r, r) + h);
    if (used.contains(x)) continue;
    const Point q = curve.at(x);
    if (norm2(q) > r2) continue;
    used.insert(x);
    out.push_back(q);
  }
  shuffle<Point>(out, rng);
  return out;
}

std::vector<Point> gen_parabola(const GenSpec& spec) {
  if (spec.n >= (std::size_t{1} << 30)) throw UnsatisfiableSpec("parabola: n too large");
  std::vector<Point> out;
  for (std::size_t i = 1; i <= spec.n; ++i) {
    const auto c = static_cast<Coord>(i);
    out.push_back({c, c * c});
  }
  return out;
}

}  // namespace

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::disk: return "disk";
    case GenKind::convex: return "convex";
    case GenKind::clustered: return "clustered";
    case GenKind::parabola: return "parabola";
  }
  return "unknown";
}

GenKind parse_gen_kind(std::string_view name) {
  for (GenKind k : {GenKind::disk, GenKind::convex, GenKind::clustered, GenKind::parabola})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown generator kind: " + std::string(name));
}

std::uint64_t prime_at_most(std::uint64_t v) {
  if (v < 2) throw std::invalid_argument("prime_at_most: no prime below 2");
  while (!is_prime(v)) --v;
  return v;
}

std::vector<GenSpec> sweep_specs(GenKind kind, std::size_t count, std::size_t min_n,
                                 std::size_t max_n, std::uint64_t seed, Coord coord_range) {
  if (min_n == 0 || min_n > max_n) throw std::invalid_argument("sweep_specs: bad size range");
  SplitMix64 rng(seed);
  std::vector<GenSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec s;
    s.kind = kind;
    s.n = min_n + static_cast<std::size_t>(rng.below(max_n - min_n + 1));
    s.seed = rng.next();
    s.coord_range = coord_range;
    out.push_back(s);
  }
  return out;
}

PointSet generate(const GenSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("generate: n must be positive");
  SplitMix64 rng(spec.seed);
  switch (spec.kind) {
    case GenKind::disk: return PointSet::assume_general_position(gen_disk(spec, rng));
    case GenKind::convex: return PointSet::assume_general_position(gen_convex(spec, rng));
    case GenKind::clustered: return PointSet::assume_general_position(gen_clustered(spec, rng));
    case GenKind::parabola: return PointSet::assume_general_position(gen_parabola(spec));
  }
  throw std::logic_error("generate: unhandled kind");
}

}  // namespace certhull
