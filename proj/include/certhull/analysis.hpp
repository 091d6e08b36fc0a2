#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "certhull/bigint.hpp"
#include "certhull/certify.hpp"
#include "certhull/geom.hpp"
#include "certhull/hull_kms.hpp"
#include "certhull/oracle.hpp"
#include "json.hpp"

namespace certhull {

/// Exact ordered-downdraft counts are limited to this many internal points.
inline constexpr std::size_t kOrderedDowndraftCap = 10;

/// One quadrangle-tree node, i.e. one recursive call with p_l != p_r.
/// The quadrangle is (p, q, s, r): root edge pq = (p_l, p_r), far edge
/// rs = (p_i, p_j). r == p and/or s == q are allowed.
struct QuadNode {
  Index p = -1;
  Index q = -1;
  Index s = -1;
  Index r = -1;
  std::vector<Index> population;
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  std::optional<std::size_t> parent;
  HullSide side = HullSide::upper;
  std::size_t depth = 0;
  std::size_t subproblem_size = 0;  // |S| of the originating call
  std::size_t s_star_size = 0;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    const auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull ^
                   (static_cast<std::uint64_t>(p.y) + 0x632BE59BD9B4E019ull);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// The quadrangle trees of the upper and lower chains. Indices refer to the
/// array the trace was recorded on (`points`).
struct QuadForest {
  PointSet points;
  std::vector<QuadNode> nodes;
  std::optional<std::size_t> upper_root;
  std::optional<std::size_t> lower_root;
  std::vector<std::optional<std::size_t>> node_of;  // r(p); empty for the root-edge endpoints
  std::vector<Index> internal;                      // P - ch(P), ascending
  std::pair<Index, Index> root_edge{-1, -1};

  /// Index of a point in `points`; throws std::out_of_range for foreign points.
  Index index_of(const Point& p) const;
  bool is_strict_ancestor(std::size_t a, std::size_t b) const;

 private:
  friend QuadForest build_forest(const RunTrace& trace, const PointSet& input);
  std::unordered_map<Point, Index, PointHash> lookup_;
};

/// Throws std::invalid_argument if the trace's populations do not partition
/// the input minus the root-edge endpoints.
QuadForest build_forest(const RunTrace& trace, const PointSet& input);

/// p precedes q: r(p) is a strict ancestor of r(q), or both share a node and q
/// lies strictly deeper from its root edge. Throws std::invalid_argument if
/// either point has no node.
bool precedes(Index p, Index q, const QuadForest& f);

/// A(p) = { q : p precedes q }, ascending.
std::vector<Index> choice_set(Index p, const QuadForest& f);

/// |A(p)| for every internal point, in the order of f.internal. O(n log n).
std::vector<std::size_t> choice_set_sizes(const QuadForest& f);

/// |OD| over the whole forest, or over the subtree rooted at `subtree`.
/// Memoised over fiber sizes of the still-reachable targets. Throws
/// std::invalid_argument when the domain exceeds kOrderedDowndraftCap points.
BigInt count_ordered_downdrafts(const QuadForest& f,
                                std::optional<std::size_t> subtree = std::nullopt);

/// Sum over internal p of log2 |A(p)|, a lower bound for log2 |OD|.
double log2_od_lower_bound(const QuadForest& f);

struct SplitVerdict {
  std::size_t node = 0;
  BigInt lhs;  // |OD(S)|
  BigInt rhs;  // |S|^|S*| * |OD(S1)| * |OD(S2)|
  bool ok = false;
};

/// Checks |OD(S)| <= |S|^|S*| |OD(S1)| |OD(S2)| at every node.
std::vector<SplitVerdict> check_downdraft_split(const RunTrace& trace, const QuadForest& f);

struct OrderedDowndraft {
  std::map<Index, Index> phi;                      // internal point -> target point
  std::map<Index, std::vector<Index>> fiber_order; // target -> preimages, in order
  friend auto operator<=>(const OrderedDowndraft&, const OrderedDowndraft&) = default;
  friend bool operator==(const OrderedDowndraft&, const OrderedDowndraft&) = default;
};

struct CornerAssignment {
  std::map<Index, Index> choice;  // internal position -> chosen corner position
  friend auto operator<=>(const CornerAssignment&, const CornerAssignment&) = default;
  friend bool operator==(const CornerAssignment&, const CornerAssignment&) = default;
};

struct PhiImage {
  OrderedDowndraft downdraft;  // in reference indices of the forest
  CornerAssignment corners;
  std::vector<Index> hull;
  friend auto operator<=>(const PhiImage&, const PhiImage&) = default;
  friend bool operator==(const PhiImage&, const PhiImage&) = default;
};

class NoAdmissibleCorner : public std::runtime_error {
 public:
  explicit NoAdmissibleCorner(Index position);
  Index position() const noexcept { return position_; }

 private:
  Index position_;
};

/// Image of an array under the injection into OD x CA x HL. For each internal
/// position the first corner in (a, b, c) order that its point precedes is
/// chosen; fibers are ordered by position. Throws NoAdmissibleCorner when no
/// corner qualifies.
PhiImage phi_map(const PointSet& input, const HullCertificate& cert, const QuadForest& f);

struct PhiCheck {
  std::size_t witness_lists = 0;
  std::size_t arrays = 0;
  std::size_t no_admissible_corner = 0;
  std::size_t illegal = 0;     // some p with phi(p) not above p
  std::size_t collisions = 0;  // two arrays of one V(P, W) with the same image
  bool ok() const { return no_admissible_corner == 0 && illegal == 0 && collisions == 0; }
};

/// Runs phi_map over V(P, W) for every canonical W with |V(P, W)| > 0.
/// Throws std::invalid_argument for n > kWitnessListEnumMaxN.
PhiCheck check_phi(const PointSet& p);

struct BoundsOptions {
  std::size_t permutation_samples = 8;
  std::uint64_t seed = 1;
  bool exhaustive_if_small = true;  // all n! arrays and exact V_max when n <= 7
};

struct BoundsReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double log2_hl = 0;
  std::optional<double> log2_od_exact;
  double log2_od_lower = 0;
  double ub_value = 0;
  std::uint64_t measured_max_branches = 0;
  double measured_mean_branches = 0;
  std::size_t arrays_run = 0;
  std::optional<double> lb_value;
  std::optional<bool> cor54_ok;
  std::optional<bool> lemma48_ok;
};

inline constexpr std::size_t kExhaustiveArraysMaxN = 7;

/// Arrays used to estimate the universal running time: identity, reverse,
/// hull points last, then `samples` seeded shuffles.
std::vector<Permutation> sample_arrays(const PointSet& p, std::size_t samples, std::uint64_t seed);

BoundsReport bounds_report(const PointSet& p, const BoundsOptions& opts = {});

nlohmann::ordered_json bounds_report_to_json(const BoundsReport& r);

}  // namespace certhull
