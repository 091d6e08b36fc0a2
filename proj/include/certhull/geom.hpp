#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace certhull {

using Coord = std::int64_t;
using Index = std::int32_t;
__extension__ typedef __int128 Wide;

/// Coordinates must lie in [-kCoordLimit, kCoordLimit). Differences then fit in
/// 62 bits and every cross product of differences fits comfortably in 126 bits.
inline constexpr Coord kCoordLimit = Coord{1} << 61;

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  // Lexicographic (x, y). Uncounted; algorithm code goes through lex_less.
  friend auto operator<=>(const Point&, const Point&) = default;
};

bool in_coord_range(const Point& p) noexcept;

/// Number of binary branch decisions taken by one run. Three-outcome tests are
/// charged 2, two-outcome tests 1.
class DecisionCounter {
 public:
  void charge(std::uint64_t branches) noexcept { branches_ += branches; }
  std::uint64_t branches() const noexcept { return branches_; }
  void reset() noexcept { branches_ = 0; }

 private:
  std::uint64_t branches_ = 0;
};

enum class LineSide { above, on, below };

/// Sign of (b - a) x (c - a); +1 is counterclockwise. Cost 2.
int orient(const Point& a, const Point& b, const Point& c, DecisionCounter& ctr);

/// Classifies p against the line through a and b. "above" means strictly left
/// of the direction from the lexicographically smaller endpoint to the larger
/// one, independent of argument order. Cost 2. Throws if a == b.
LineSide side_of_line(const Point& p, const Point& a, const Point& b, DecisionCounter& ctr);

/// True iff p lies strictly inside triangle abc. Evaluates the triangle's own
/// orientation plus p against all three edges: cost 8. Throws if abc is
/// degenerate.
bool in_triangle_strict(const Point& p, const Point& a, const Point& b, const Point& c,
                        DecisionCounter& ctr);

/// Lexicographic (x, y) comparison. Cost 1, or 2 when the x-coordinates tie.
bool lex_less(const Point& p, const Point& q, DecisionCounter& ctr);

/// Compares the distances of p and q from the line ab. Throws if a == b.
std::strong_ordering depth_cmp(const Point& p, const Point& q, const Point& a, const Point& b);

/// Compares the slope of segment a->b with that of c->d, where each segment is
/// directed lexicographically increasing. Equal x is treated as an
/// infinitesimal rightward tilt, so vertical segments are steeper than any
/// other and equal among themselves. Returns -1, 0 or +1. Cost 2.
int slope_cmp(const Point& a, const Point& b, const Point& c, const Point& d,
              DecisionCounter& ctr);

/// Sign of (b - a) x (p - q): +1 when p lies strictly further left of the
/// direction a->b than q does. Cost 2.
int height_cmp(const Point& p, const Point& q, const Point& a, const Point& b,
               DecisionCounter& ctr);

struct GeneralPositionViolation {
  enum class Kind { duplicate, collinear };
  Kind kind;
  // Ascending indices; the third entry is -1 for duplicates.
  std::array<Index, 3> indices;

  std::string describe() const;
  friend bool operator==(const GeneralPositionViolation&,
                         const GeneralPositionViolation&) = default;
};

/// Returns the lexicographically first violation: duplicates are reported
/// before collinear triples. Small sets use an exhaustive triple scan; larger
/// ones sort directions around each point, which finds the same triple.
std::optional<GeneralPositionViolation> validate_general_position(std::span<const Point> pts);

class GeneralPositionError : public std::runtime_error {
 public:
  explicit GeneralPositionError(GeneralPositionViolation v);
  const GeneralPositionViolation& violation() const noexcept { return violation_; }

 private:
  GeneralPositionViolation violation_;
};

/// An input array I_P: a sequence of points in general position. The order of
/// the points is significant; indices into it are what certificates refer to.
class PointSet {
 public:
  PointSet() = default;

  /// Validates coordinate range and general position. Throws
  /// std::out_of_range or GeneralPositionError.
  explicit PointSet(std::vector<Point> pts);

  /// Skips the general-position scan. Only for generators whose construction
  /// already guarantees it; the coordinate range is still checked.
  static PointSet assume_general_position(std::vector<Point> pts);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
  std::span<const Point> points() const noexcept { return points_; }

  /// The array obtained by placing points()[perm[i]] at position i.
  PointSet permuted(std::span<const Index> perm) const;

 private:
  struct Unchecked {};
  PointSet(std::vector<Point> pts, Unchecked);

  std::vector<Point> points_;
};

}  // namespace certhull
