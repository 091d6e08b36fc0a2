#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certhull/geom.hpp"

namespace certhull {

enum class GenKind { disk, convex, clustered, parabola };

std::string_view to_string(GenKind kind);
/// Throws std::invalid_argument for an unknown name.
GenKind parse_gen_kind(std::string_view name);

struct GenSpec {
  GenKind kind = GenKind::disk;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Coord coord_range = Coord{1} << 30;  // |x|, |y| <= coord_range (parabola ignores it)
  std::size_t anchors = 4;             // clustered only
};

/// Raised when a spec cannot be met within the retry budget.
class UnsatisfiableSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic in the spec. Every kind except parabola draws distinct x from
/// [0, p) for a prime p and uses y = (a x^2 + b x + c) mod p with random
/// a != 0, b, c; a line meets that curve mod p at most twice, so no subset has
/// three collinear points. Results are shifted to be centred on the origin.
///   disk:      curve points inside the inscribed disk, in draw order
///   convex:    points rounded onto a circle, kept only in strictly convex position, shuffled
///   clustered: `anchors` curve points near a regular polygon of radius 0.9 R
///              plus the rest inside a ball of radius R/16 at the centre, shuffled
///   parabola:  (i, i^2) for i = 1..n
PointSet generate(const GenSpec& spec);

/// `count` specs of one kind with n uniform in [min_n, max_n]; sizes and
/// per-instance seeds are drawn from one SplitMix64 stream seeded with `seed`.
std::vector<GenSpec> sweep_specs(GenKind kind, std::size_t count, std::size_t min_n,
                                 std::size_t max_n, std::uint64_t seed,
                                 Coord coord_range = Coord{1} << 30);

/// Largest prime <= v (v >= 2).
std::uint64_t prime_at_most(std::uint64_t v);

}  // namespace certhull
