#include "certhull/geom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace certhull {

namespace {

Wide cross(const Point& a, const Point& b, const Point& c) {
  const Wide abx = Wide{b.x} - a.x;
  const Wide aby = Wide{b.y} - a.y;
  const Wide acx = Wide{c.x} - a.x;
  const Wide acy = Wide{c.y} - a.y;
  return abx * acy - aby * acx;
}

// (u1 - u0) x (v1 - v0)
Wide cross_vec(const Point& u0, const Point& u1, const Point& v0, const Point& v1) {
  const Wide ux = Wide{u1.x} - u0.x;
  const Wide uy = Wide{u1.y} - u0.y;
  const Wide vx = Wide{v1.x} - v0.x;
  const Wide vy = Wide{v1.y} - v0.y;
  return ux * vy - uy * vx;
}

int sign(Wide v) { return (v > 0) - (v < 0); }

Wide abs_wide(Wide v) { return v < 0 ? -v : v; }

constexpr std::size_t kExhaustiveScanLimit = 400;

std::optional<GeneralPositionViolation> first_duplicate(std::span<const Point> pts) {
  std::vector<Index> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return pts[a] < pts[b]; });
  std::optional<std::pair<Index, Index>> best;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (pts[order[i]] != pts[order[i + 1]]) continue;
    // within a run of equal points the stable sort keeps indices ascending,
    // so the run's first two entries are its smallest pair
    if (i > 0 && pts[order[i - 1]] == pts[order[i]]) continue;
    std::pair<Index, Index> cand{order[i], order[i + 1]};
    if (!best || cand < *best) best = cand;
  }
  if (!best) return std::nullopt;
  return GeneralPositionViolation{GeneralPositionViolation::Kind::duplicate,
                                  {best->first, best->second, -1}};
}

std::optional<GeneralPositionViolation> first_collinear_exhaustive(std::span<const Point> pts) {
  const auto n = static_cast<Index>(pts.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k)
        if (cross(pts[i], pts[j], pts[k]) == 0)
          return GeneralPositionViolation{GeneralPositionViolation::Kind::collinear, {i, j, k}};
  return std::nullopt;
}

// For each i in ascending order, sorts the directions towards all j > i by
// angle (folded into a half-plane); equal directions are collinear triples.
std::optional<GeneralPositionViolation> first_collinear_sorted(std::span<const Point> pts) {
  const auto n = static_cast<Index>(pts.size());
  struct Dir {
    Wide dx, dy;
    Index j;
  };
  std::vector<Dir> dirs;
  dirs.reserve(pts.size());
  for (Index i = 0; i + 2 < n; ++i) {
    dirs.clear();
    for (Index j = i + 1; j < n; ++j) {
      Wide dx = Wide{pts[j].x} - pts[i].x;
      Wide dy = Wide{pts[j].y} - pts[i].y;
      if (dy < 0 || (dy == 0 && dx < 0)) {
        dx = -dx;
        dy = -dy;
      }
      dirs.push_back({dx, dy, j});
    }
    auto angle_less = [](const Dir& u, const Dir& v) {
      const Wide c = u.dx * v.dy - u.dy * v.dx;
      if (c != 0) return c > 0;
      return u.j < v.j;
    };
    std::sort(dirs.begin(), dirs.end(), angle_less);
    std::optional<std::pair<Index, Index>> best;
    for (std::size_t a = 0; a + 1 < dirs.size(); ++a) {
      const Dir& u = dirs[a];
      const Dir& v = dirs[a + 1];
      if (u.dx * v.dy - u.dy * v.dx != 0) continue;
      if (a > 0) {
        const Dir& w = dirs[a - 1];
        if (w.dx * u.dy - w.dy * u.dx == 0) continue;  // not the start of the run
      }
      std::pair<Index, Index> cand{u.j, v.j};
      if (!best || cand < *best) best = cand;
    }
    if (best)
      return GeneralPositionViolation{GeneralPositionViolation::Kind::collinear,
                                      {i, best->first, best->second}};
  }
  return std::nullopt;
}

void check_range(std::span<const Point> pts) {
  for (const auto& p : pts)
    if (!in_coord_range(p)) throw std::out_of_range("coordinate outside the supported 62-bit range");
}

}  // namespace

bool in_coord_range(const Point& p) noexcept {
  return p.x >= -kCoordLimit && p.x < kCoordLimit && p.y >= -kCoordLimit && p.y < kCoordLimit;
}

int orient(const Point& a, const Point& b, const Point& c, DecisionCounter& ctr) {
  ctr.charge(2);
  return sign(cross(a, b, c));
}

LineSide side_of_line(const Point& p, const Point& a, const Point& b, DecisionCounter& ctr) {
  if (a == b) throw std::invalid_argument("side_of_line: degenerate line");
  const bool ordered = a < b;
  const Point& lo = ordered ? a : b;
  const Point& hi = ordered ? b : a;
  const int s = orient(lo, hi, p, ctr);
  return s > 0 ? LineSide::above : (s < 0 ? LineSide::below : LineSide::on);
}

bool in_triangle_strict(const Point& p, const Point& a, const Point& b, const Point& c,
                        DecisionCounter& ctr) {
  const int t = orient(a, b, c, ctr);
  if (t == 0) throw std::invalid_argument("in_triangle_strict: collinear triangle");
  const int s1 = orient(a, b, p, ctr);
  const int s2 = orient(b, c, p, ctr);
  const int s3 = orient(c, a, p, ctr);
  return s1 == t && s2 == t && s3 == t;
}

bool lex_less(const Point& p, const Point& q, DecisionCounter& ctr) {
  ctr.charge(1);
  if (p.x != q.x) return p.x < q.x;
  ctr.charge(1);
  return p.y < q.y;
}

std::strong_ordering depth_cmp(const Point& p, const Point& q, const Point& a, const Point& b) {
  if (a == b) throw std::invalid_argument("depth_cmp: degenerate line");
  const Wide dp = abs_wide(cross(a, b, p));
  const Wide dq = abs_wide(cross(a, b, q));
  return dp <=> dq;
}

int slope_cmp(const Point& a, const Point& b, const Point& c, const Point& d,
              DecisionCounter& ctr) {
  ctr.charge(2);
  return sign(cross_vec(c, d, a, b));
}

int height_cmp(const Point& p, const Point& q, const Point& a, const Point& b,
               DecisionCounter& ctr) {
  ctr.charge(2);
  return sign(cross_vec(a, b, q, p));
}

std::string GeneralPositionViolation::describe() const {
  std::ostringstream os;
  if (kind == Kind::duplicate)
    os << "duplicate(" << indices[0] << "," << indices[1] << ")";
  else
    os << "collinear(" << indices[0] << "," << indices[1] << "," << indices[2] << ")";
  return os.str();
}

std::optional<GeneralPositionViolation> validate_general_position(std::span<const Point> pts) {
  if (auto dup = first_duplicate(pts)) return dup;
  if (pts.size() <= kExhaustiveScanLimit) return first_collinear_exhaustive(pts);
  return first_collinear_sorted(pts);
}

GeneralPositionError::GeneralPositionError(GeneralPositionViolation v)
    : std::runtime_error("general position violated: " + v.describe()), violation_(v) {}

PointSet::PointSet(std::vector<Point> pts) : points_(std::move(pts)) {
  check_range(points_);
  if (auto v = validate_general_position(points_)) throw GeneralPositionError(*v);
}

PointSet::PointSet(std::vector<Point> pts, Unchecked) : points_(std::move(pts)) {
  check_range(points_);
}

PointSet PointSet::assume_general_position(std::vector<Point> pts) {
  return PointSet(std::move(pts), Unchecked{});
}

PointSet PointSet::permuted(std::span<const Index> perm) const {
  if (perm.size() != points_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Point> out;
  out.reserve(perm.size());
  for (Index i : perm) out.push_back(points_.at(static_cast<std::size_t>(i)));
  return PointSet(std::move(out), Unchecked{});
}

}  // namespace certhull
