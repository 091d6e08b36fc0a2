#include "certhull/hull_kms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "certhull/select.hpp"

namespace certhull {

namespace {

int side_sign(HullSide side) { return side == HullSide::upper ? 1 : -1; }

bool on_chosen_side_or_line(const Point& p, const Point& a, const Point& b, HullSide side,
                            DecisionCounter& ctr) {
  const LineSide ls = side_of_line(p, a, b, ctr);
  if (ls == LineSide::on) return true;
  return (ls == LineSide::above) == (side == HullSide::upper);
}

struct Segment {
  Index lo;
  Index hi;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Prune and search for the chain edge straddling the vertical line just right
// of m. Candidates that provably are not bridge endpoints are discarded; each
// round removes at least a quarter of them.
std::pair<Index, Index> bridge_search(std::span<const Index> s, Index m, const PointSet& ps,
                                      DecisionCounter& ctr, HullSide side) {
  const int sg = side_sign(side);
  auto right_of_line = [&](Index v) { return lex_less(ps[m], ps[v], ctr); };

  std::vector<Index> cand(s.begin(), s.end());
  while (cand.size() > 2) {
    std::vector<Index> next;
    std::vector<Segment> pairs;
    pairs.reserve(cand.size() / 2);
    for (std::size_t i = 0; i + 1 < cand.size(); i += 2) {
      const Index a = cand[i];
      const Index b = cand[i + 1];
      pairs.push_back(lex_less(ps[a], ps[b], ctr) ? Segment{a, b} : Segment{b, a});
    }
    if (cand.size() % 2 == 1) next.push_back(cand.back());

    auto slope_order = [&](const Segment& u, const Segment& v) {
      return sg * slope_cmp(ps[u.lo], ps[u.hi], ps[v.lo], ps[v.hi], ctr);
    };
    const std::size_t rank = (pairs.size() - 1) / 2;
    RankSplit<Segment> split = select_split(std::move(pairs), rank, slope_order);
    const Segment median = split.kth;

    // supporting line of the candidates with the median slope
    std::vector<Index> contact{cand.front()};
    for (std::size_t i = 1; i < cand.size(); ++i) {
      const int h = sg * height_cmp(ps[cand[i]], ps[contact.front()], ps[median.lo],
                                    ps[median.hi], ctr);
      if (h > 0) {
        contact.assign(1, cand[i]);
      } else if (h == 0) {
        contact.push_back(cand[i]);
      }
    }
    Index leftmost = contact.front();
    Index rightmost = contact.front();
    if (contact.size() > 1) {
      // general position allows at most two points on the supporting line
      if (lex_less(ps[contact[1]], ps[contact[0]], ctr))
        leftmost = contact[1];
      else
        rightmost = contact[1];
    }

    const bool left_on_left = !right_of_line(leftmost);
    const bool right_on_right = leftmost == rightmost ? !left_on_left : right_of_line(rightmost);
    if (left_on_left && right_on_right) return {leftmost, rightmost};

    // Contact left of the line: the bridge is less steep than the median, so
    // the left end of every pair at least as steep cannot be a bridge end.
    // Contact right of the line: symmetric.
    const bool bridge_flatter = left_on_left;
    for (const Segment& pr : split.less) {
      next.push_back(pr.lo);
      if (bridge_flatter) next.push_back(pr.hi);
    }
    for (const Segment& pr : split.equal) next.push_back(bridge_flatter ? pr.hi : pr.lo);
    for (const Segment& pr : split.greater) {
      next.push_back(bridge_flatter ? pr.hi : pr.lo);
      if (!bridge_flatter) next.push_back(pr.hi);
    }
    cand = std::move(next);
  }
  if (cand.size() != 2) throw std::logic_error("find_bridge: candidate set collapsed");
  if (lex_less(ps[cand[1]], ps[cand[0]], ctr)) std::swap(cand[0], cand[1]);
  return {cand[0], cand[1]};
}

Partition partition_impl(std::span<const Index> s, Index p_l, Index p_i, Index p_j, Index p_r,
                         const PointSet& ps, DecisionCounter& ctr, HullSide side) {
  Partition out;
  for (Index v : s) {
    // quadrangle corners are placed without a test
    if (v == p_l || v == p_i) {
      out.s1.push_back(v);
      continue;
    }
    if (v == p_j || v == p_r) {
      out.s2.push_back(v);
      continue;
    }
    if (p_i != p_l && on_chosen_side_or_line(ps[v], ps[p_l], ps[p_i], side, ctr)) {
      out.s1.push_back(v);
    } else if (p_j != p_r && on_chosen_side_or_line(ps[v], ps[p_j], ps[p_r], side, ctr)) {
      out.s2.push_back(v);
    } else {
      out.s_star.push_back(v);
    }
  }
  return out;
}

void give_witness_impl(std::span<const Index> s_star, Index p_l, Index p_r, Index p_j,
                       Index p_i, const PointSet& ps, std::vector<Triple>& out,
                       DecisionCounter& ctr, HullSide side) {
  const int sg = side_sign(side);
  DecisionCounter scratch;  // containment re-check is an assertion, not part of the run
  for (Index v : s_star) {
    Triple t;
    if (p_i == p_l) {
      t = {p_l, p_r, p_j};
    } else if (p_j == p_r) {
      t = {p_l, p_r, p_i};
    } else {
      const int o = sg * orient(ps[p_l], ps[p_j], ps[v], ctr);
      if (o == 0) throw std::logic_error("give_witness: point on the quadrangle diagonal");
      t = o < 0 ? Triple{p_l, p_r, p_j} : Triple{p_l, p_j, p_i};
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] ||
        !in_triangle_strict(ps[v], ps[t[0]], ps[t[1]], ps[t[2]], scratch))
      throw std::logic_error("give_witness: point lies in neither triangle of the quadrangle");
    out.at(static_cast<std::size_t>(v)) = t;
  }
}

struct ChainContext {
  HullSide side;
  const PointSet& ps;
  RunTrace& trace;
  CertificateBuilder& builder;
  DecisionCounter& ctr;
};

// Emits the chain of S from p_l to p_r, including p_r only when `closed`.
void chain_recurse(ChainContext& cx, std::vector<Index> s, Index p_l, Index p_r, bool closed,
                   std::optional<std::size_t> parent) {
  if (p_l == p_r) {
    if (closed) cx.builder.chain.push_back(p_l);
    return;
  }
  const Index m = select_median_x(s, cx.ps, cx.ctr);
  const auto [p_i, p_j] = bridge_search(s, m, cx.ps, cx.ctr, cx.side);
  Partition parts = partition_impl(s, p_l, p_i, p_j, p_r, cx.ps, cx.ctr, cx.side);

  auto& calls = cx.side == HullSide::upper ? cx.trace.upper_calls : cx.trace.lower_calls;
  const std::size_t self = calls.size();
  calls.push_back(CallRecord{p_l, p_r, p_i, p_j, parts.s_star, s.size(), cx.side, parent});

  s.clear();
  s.shrink_to_fit();
  chain_recurse(cx, std::move(parts.s1), p_l, p_i, true, self);
  chain_recurse(cx, std::move(parts.s2), p_j, p_r, closed, self);
  give_witness_impl(parts.s_star, p_l, p_r, p_j, p_i, cx.ps, cx.builder.witnesses, cx.ctr,
                    cx.side);
}

void require_member(std::span<const Index> s, Index v, const char* what) {
  if (std::find(s.begin(), s.end(), v) == s.end())
    throw std::invalid_argument(std::string(what) + " is not a member of S");
}

}  // namespace

Index select_median_x(std::span<const Index> s, const PointSet& ps, DecisionCounter& ctr) {
  if (s.empty()) throw std::invalid_argument("select_median_x: empty set");
  std::vector<Index> items(s.begin(), s.end());
  auto lex = [&](Index a, Index b) {
    if (a == b) return 0;
    return lex_less(ps[a], ps[b], ctr) ? -1 : 1;
  };
  return select_kth(std::move(items), (s.size() - 1) / 2, lex);
}

std::pair<Index, Index> find_bridge(std::span<const Index> s, Index m, Index p_l, Index p_r,
                                    const PointSet& ps, DecisionCounter& ctr, HullSide side) {
  if (p_l == p_r || ps[p_l] == ps[p_r]) throw std::invalid_argument("find_bridge: p_l == p_r");
  require_member(s, m, "m");
  require_member(s, p_l, "p_l");
  require_member(s, p_r, "p_r");
  DecisionCounter scratch;
  if (!(ps[p_l] < ps[p_r])) throw std::invalid_argument("find_bridge: p_l must precede p_r");
  for (Index v : s) {
    if (!on_chosen_side_or_line(ps[v], ps[p_l], ps[p_r], side, scratch))
      throw std::invalid_argument("find_bridge: point on the wrong side of the root line");
  }
  if (!(ps[m] < ps[p_r])) throw std::invalid_argument("find_bridge: m must precede p_r");
  return bridge_search(s, m, ps, ctr, side);
}

Partition partition(std::span<const Index> s, Index p_l, Index p_i, Index p_j, Index p_r,
                    const PointSet& ps, DecisionCounter& ctr, HullSide side) {
  return partition_impl(s, p_l, p_i, p_j, p_r, ps, ctr, side);
}

void give_witness(std::span<const Index> s_star, Index p_l, Index p_r, Index p_j, Index p_i,
                  const PointSet& ps, std::vector<Triple>& out, DecisionCounter& ctr,
                  HullSide side) {
  give_witness_impl(s_star, p_l, p_r, p_j, p_i, ps, out, ctr, side);
}

void hull_chain_kms(HullSide side, std::vector<Index> s, Index p_l, Index p_r,
                    const PointSet& ps, RunTrace& trace, CertificateBuilder& builder,
                    DecisionCounter& ctr) {
  ChainContext cx{side, ps, trace, builder, ctr};
  if (p_l == p_r) {
    builder.chain.push_back(p_l);
    return;
  }
  chain_recurse(cx, std::move(s), p_l, p_r, false, std::nullopt);
}

HullRun convex_hull_certified(const PointSet& input) {
  const auto n = static_cast<Index>(input.size());
  if (n == 0) throw std::invalid_argument("convex_hull_certified: empty input");

  HullRun run;
  RunTrace& trace = run.trace;
  DecisionCounter& ctr = trace.counter;

  Index left = 0;
  Index right = 0;
  for (Index i = 1; i < n; ++i) {
    if (lex_less(input[i], input[left], ctr)) left = i;
    if (lex_less(input[right], input[i], ctr)) right = i;
  }
  trace.root_edge = {left, right};

  if (n == 1) {
    run.certificate.hull = {0};
    run.certificate.witnesses = {kSentinel};
    return run;
  }

  std::vector<Index> upper{left, right};
  std::vector<Index> lower{left, right};
  for (Index i = 0; i < n; ++i) {
    if (i == left || i == right) continue;
    // nothing but the endpoints lies on the root line
    if (side_of_line(input[i], input[left], input[right], ctr) == LineSide::above)
      upper.push_back(i);
    else
      lower.push_back(i);
  }

  CertificateBuilder builder(static_cast<std::size_t>(n));
  hull_chain_kms(HullSide::lower, std::move(lower), left, right, input, trace, builder, ctr);
  builder.chain.push_back(right);
  std::vector<Index> hull = std::move(builder.chain);

  builder.chain.clear();
  hull_chain_kms(HullSide::upper, std::move(upper), left, right, input, trace, builder, ctr);
  builder.chain.push_back(right);
  // upper chain runs left to right; counterclockwise order walks it backwards
  for (std::size_t i = builder.chain.size() - 2; i >= 1; --i) hull.push_back(builder.chain[i]);

  run.certificate.hull = std::move(hull);
  run.certificate.witnesses = std::move(builder.witnesses);
  return run;
}

}  // namespace certhull
