#pragma once

#include <vector>

#include "certhull/gen.hpp"
#include "certhull/geom.hpp"
#include "certhull/random.hpp"

namespace certhull::testing {

// Small integer grid sets with rejection, so collinear near-misses are common.
inline PointSet small_grid_set(std::size_t n, Coord range, SplitMix64& rng) {
  std::vector<Point> pts;
  DecisionCounter scratch;
  while (pts.size() < n) {
    const Point c{rng.between(-range, range), rng.between(-range, range)};
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      ok = pts[i] != c;
      for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = orient(pts[i], pts[j], c, scratch) != 0;
    }
    if (ok) pts.push_back(c);
  }
  return PointSet(std::move(pts));
}

inline PointSet mixed_instance(std::size_t n, std::uint64_t seed) {
  static const GenKind kinds[] = {GenKind::disk, GenKind::clustered, GenKind::convex};
  GenSpec spec;
  spec.kind = kinds[seed % 3];
  spec.n = n;
  spec.seed = seed;
  spec.coord_range = spec.kind == GenKind::clustered ? 1 << 20 : 1000;
  return generate(spec);
}

}  // namespace certhull::testing
