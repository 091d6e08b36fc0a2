#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "certhull/bigint.hpp"
#include "certhull/certify.hpp"
#include "certhull/geom.hpp"

// Brute-force ground truth. Everything here is deliberately naive and shares
// no code with the hull algorithm beyond the orientation primitive.

namespace certhull {

inline constexpr std::size_t kCountVMaxN = 8;
inline constexpr std::size_t kVMaxMaxN = 7;
inline constexpr std::size_t kWitnessListEnumMaxN = 7;

/// Canonical form of a witness list: which positions carry sentinels, and the
/// ascending triple at every other position.
struct WitnessKey {
  std::vector<Index> hull_positions;
  std::map<Index, Triple> triples;

  friend auto operator<=>(const WitnessKey&, const WitnessKey&) = default;
  friend bool operator==(const WitnessKey&, const WitnessKey&) = default;

  static WitnessKey from_list(std::span<const Triple> w);
  std::vector<Triple> to_list(std::size_t n) const;
};

/// A permutation as an array: position i holds P[perm[i]].
using Permutation = std::vector<Index>;

/// Calls f on every permutation of 0..n-1 in lexicographic order.
void for_each_permutation(std::size_t n, const std::function<void(const Permutation&)>& f);

/// Gift wrapping from the lexicographically smallest point; counterclockwise.
/// Throws GeneralPositionError on invalid input and std::invalid_argument if empty.
std::vector<Point> hull_bruteforce(std::span<const Point> pts);

/// Same walk, reporting indices into pts.
std::vector<Index> hull_indices_bruteforce(std::span<const Point> pts);

/// Every ascending triple of indices (not containing p) whose triangle strictly
/// contains pts[p].
std::vector<Triple> witnesses_all(std::span<const Point> pts, Index p);

/// |V(P, W)|: the number of permutations of P for which W is a witness list.
/// Throws std::invalid_argument for n > kCountVMaxN.
std::uint64_t count_V(std::span<const Point> pts, const WitnessKey& w);

struct VMaxResult {
  WitnessKey key;
  std::uint64_t count = 0;
};

/// Exact V_max(P) with a maximising witness list. Witness lists are equivalent
/// under relabelling positions, so the search fixes the sentinels to the first
/// k positions and runs branch and bound over per-position triples, each
/// carrying the bitset of arrays it is consistent with.
/// Throws std::invalid_argument for n > kVMaxMaxN.
VMaxResult v_max(std::span<const Point> pts);

/// Every canonical witness list with |V(P, W)| > 0, each with the arrays of
/// V(P, W) in lexicographic order. Enumerates arrays and, per array, the product
/// of its valid triples. Throws for n > kWitnessListEnumMaxN.
std::map<WitnessKey, std::vector<Permutation>> consistent_witness_lists(std::span<const Point> pts);

/// n! / (n - k)! with k = |ch(P)|.
BigInt count_hull_lists(std::span<const Point> pts);

/// The unique hull list of the array P[perm[0]], P[perm[1]], ...
std::vector<Index> canonical_hull_list(std::span<const Point> pts, const Permutation& perm);

}  // namespace certhull
