#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "certhull/certify.hpp"
#include "certhull/geom.hpp"

namespace certhull {

/// Which chain a recursive call works on. Lower-chain calls use the mirrored
/// side predicate: "above" becomes "below" and slope/height signs flip, while
/// the lexicographic order stays the same.
enum class HullSide { upper, lower };

/// One recursive call with p_l != p_r. All members are indices into the input
/// array. The quadrangle is (p_l, p_r, p_j, p_i); p_i == p_l and/or p_j == p_r
/// are allowed.
struct CallRecord {
  Index p_l = -1;
  Index p_r = -1;
  Index p_i = -1;
  Index p_j = -1;
  std::vector<Index> s_star;
  std::size_t s_size = 0;
  HullSide side = HullSide::upper;
  std::optional<std::size_t> parent;  // position in the same side's call list
};

struct RunTrace {
  std::vector<CallRecord> upper_calls;
  std::vector<CallRecord> lower_calls;
  DecisionCounter counter;
  std::pair<Index, Index> root_edge{-1, -1};  // (leftmost, rightmost)

  const std::vector<CallRecord>& calls(HullSide side) const {
    return side == HullSide::upper ? upper_calls : lower_calls;
  }
};

/// Accumulates one side's chain and the shared witness list during a run.
struct CertificateBuilder {
  std::vector<Index> chain;
  std::vector<Triple> witnesses;  // one entry per input index

  explicit CertificateBuilder(std::size_t n) : witnesses(n, kSentinel) {}
};

struct Partition {
  std::vector<Index> s1;
  std::vector<Index> s2;
  std::vector<Index> s_star;
};

/// Lower median of S under lexicographic (x, y) order, by median of medians.
Index select_median_x(std::span<const Index> s, const PointSet& ps, DecisionCounter& ctr);

/// Edge (p_i, p_j) of the chain of S with p_i <=lex m <lex p_j, found by
/// prune and search in O(|S|) predicate evaluations. S must contain p_l and
/// p_r and lie on the chosen side of the line p_l p_r.
std::pair<Index, Index> find_bridge(std::span<const Index> s, Index m, Index p_l, Index p_r,
                                    const PointSet& ps, DecisionCounter& ctr,
                                    HullSide side = HullSide::upper);

Partition partition(std::span<const Index> s, Index p_l, Index p_i, Index p_j, Index p_r,
                    const PointSet& ps, DecisionCounter& ctr, HullSide side = HullSide::upper);

/// Writes a containing triangle for every point of S* into `out` (indexed by
/// input position). Proper quadrangles are split by the diagonal (p_l, p_j).
void give_witness(std::span<const Index> s_star, Index p_l, Index p_r, Index p_j, Index p_i,
                  const PointSet& ps, std::vector<Triple>& out, DecisionCounter& ctr,
                  HullSide side = HullSide::upper);

/// Appends the chain vertices of S from p_l (inclusive) to p_r (exclusive) to
/// builder.chain, or just p_l when p_l == p_r, and witnesses every other point
/// of S. One CallRecord is appended to the trace per call with p_l != p_r.
void hull_chain_kms(HullSide side, std::vector<Index> s, Index p_l, Index p_r,
                    const PointSet& ps, RunTrace& trace, CertificateBuilder& builder,
                    DecisionCounter& ctr);

inline void upper_hull_kms(std::vector<Index> s, Index p_l, Index p_r, const PointSet& ps,
                           RunTrace& trace, CertificateBuilder& builder, DecisionCounter& ctr) {
  hull_chain_kms(HullSide::upper, std::move(s), p_l, p_r, ps, trace, builder, ctr);
}

struct HullRun {
  HullCertificate certificate;
  RunTrace trace;
};

/// Full certified hull of a validated input array. Throws std::invalid_argument
/// for an empty input.
HullRun convex_hull_certified(const PointSet& input);

}  // namespace certhull
