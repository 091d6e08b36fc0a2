#include "certhull/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "certhull/random.hpp"

namespace certhull {

namespace {

Wide depth_key(const Point& v, const Point& a, const Point& b) {
  const Wide c = (Wide{b.x} - a.x) * (Wide{v.y} - a.y) - (Wide{b.y} - a.y) * (Wide{v.x} - a.x);
  return c < 0 ? -c : c;
}

std::optional<std::size_t> node_or_none(const QuadForest& f, Index v) {
  if (v < 0 || static_cast<std::size_t>(v) >= f.node_of.size()) return std::nullopt;
  return f.node_of[static_cast<std::size_t>(v)];
}

bool precedes_if_placed(Index p, Index q, const QuadForest& f) {
  const auto rp = node_or_none(f, p);
  const auto rq = node_or_none(f, q);
  if (!rp || !rq) return false;
  if (*rp == *rq) {
    const QuadNode& node = f.nodes[*rp];
    return depth_cmp(f.points[q], f.points[p], f.points[node.p], f.points[node.q]) ==
           std::strong_ordering::greater;
  }
  return f.is_strict_ancestor(*rp, *rq);
}

bool in_subtree(const QuadForest& f, std::size_t root, std::size_t node) {
  return node == root || f.is_strict_ancestor(root, node);
}

// Sum over maps phi (phi(p) in A(p)) of prod_q |phi^-1(q)|!, accumulated one
// point at a time: adding p to a fiber that already holds c points multiplies
// the number of fiber orders by c + 1.
class DowndraftCounter {
 public:
  explicit DowndraftCounter(std::vector<std::vector<Index>> choices) {
    std::stable_sort(choices.begin(), choices.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::map<Index, std::size_t> compact;
    for (const auto& c : choices)
      for (Index t : c) compact.emplace(t, 0);
    std::size_t next = 0;
    for (auto& [t, id] : compact) id = next++;
    targets_ = next;
    for (const auto& c : choices) {
      std::vector<std::size_t> ids;
      for (Index t : c) ids.push_back(compact.at(t));
      choices_.push_back(std::move(ids));
    }
    live_.resize(choices_.size() + 1);
    std::set<std::size_t> acc;
    for (std::size_t step = choices_.size(); step-- > 0;) {
      acc.insert(choices_[step].begin(), choices_[step].end());
      live_[step].assign(acc.begin(), acc.end());
    }
    memo_.resize(choices_.size() + 1);
  }

  BigInt count() {
    std::vector<std::uint8_t> fibers(targets_, 0);
    return recurse(0, fibers);
  }

 private:
  BigInt recurse(std::size_t step, std::vector<std::uint8_t>& fibers) {
    if (step == choices_.size()) return 1;
    std::vector<std::uint8_t> key;
    key.reserve(live_[step].size());
    for (std::size_t t : live_[step]) key.push_back(fibers[t]);
    auto& memo = memo_[step];
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    BigInt total = 0;
    for (std::size_t t : choices_[step]) {
      const unsigned c = fibers[t];
      ++fibers[t];
      total += BigInt(c + 1) * recurse(step + 1, fibers);
      --fibers[t];
    }
    memo.emplace(std::move(key), total);
    return total;
  }

  std::size_t targets_ = 0;
  std::vector<std::vector<std::size_t>> choices_;
  std::vector<std::vector<std::size_t>> live_;
  std::vector<std::map<std::vector<std::uint8_t>, BigInt>> memo_;
};

}  // namespace

Index QuadForest::index_of(const Point& p) const {
  auto it = lookup_.find(p);
  if (it == lookup_.end()) throw std::out_of_range("point does not belong to the forest's set");
  return it->second;
}

bool QuadForest::is_strict_ancestor(std::size_t a, std::size_t b) const {
  if (a == b || nodes[a].side != nodes[b].side) return false;
  std::optional<std::size_t> cur = nodes[b].parent;
  while (cur && nodes[*cur].depth >= nodes[a].depth) {
    if (*cur == a) return true;
    cur = nodes[*cur].parent;
  }
  return false;
}

QuadForest build_forest(const RunTrace& trace, const PointSet& input) {
  QuadForest f;
  f.points = input;
  const std::size_t n = input.size();
  f.node_of.assign(n, std::nullopt);
  f.root_edge = trace.root_edge;
  for (std::size_t i = 0; i < n; ++i) f.lookup_.emplace(input[static_cast<Index>(i)], static_cast<Index>(i));

  auto in_range = [&](Index v) { return v >= 0 && static_cast<std::size_t>(v) < n; };

  for (HullSide side : {HullSide::upper, HullSide::lower}) {
    const auto& calls = trace.calls(side);
    const std::size_t offset = f.nodes.size();
    for (const CallRecord& c : calls) {
      if (!in_range(c.p_l) || !in_range(c.p_r) || !in_range(c.p_i) || !in_range(c.p_j))
        throw std::invalid_argument("build_forest: call record index out of range");
      QuadNode node;
      node.p = c.p_l;
      node.q = c.p_r;
      node.s = c.p_j;
      node.r = c.p_i;
      node.side = side;
      node.subproblem_size = c.s_size;
      node.s_star_size = c.s_star.size();
      node.population = c.s_star;
      if (node.r != node.p) node.population.push_back(node.r);
      if (node.s != node.q) node.population.push_back(node.s);
      if (c.parent) {
        if (offset + *c.parent >= f.nodes.size())
          throw std::invalid_argument("build_forest: parent recorded after child");
        node.parent = offset + *c.parent;
      } else {
        if (side == HullSide::upper ? f.upper_root.has_value() : f.lower_root.has_value())
          throw std::invalid_argument("build_forest: two roots on one side");
        (side == HullSide::upper ? f.upper_root : f.lower_root) = f.nodes.size();
      }
      f.nodes.push_back(std::move(node));
    }
  }

  for (std::size_t id = 0; id < f.nodes.size(); ++id) {
    QuadNode& node = f.nodes[id];
    if (!node.parent) continue;
    QuadNode& par = f.nodes[*node.parent];
    node.depth = par.depth + 1;
    if (node.p == par.p && node.q == par.r && !par.left) {
      par.left = id;
    } else if (node.p == par.s && node.q == par.q && !par.right) {
      par.right = id;
    } else {
      throw std::invalid_argument("build_forest: child edge does not match its parent's quadrangle");
    }
  }

  std::set<Index> internal;
  for (std::size_t id = 0; id < f.nodes.size(); ++id) {
    for (Index v : f.nodes[id].population) {
      if (!in_range(v)) throw std::invalid_argument("build_forest: population index out of range");
      if (f.node_of[v]) throw std::invalid_argument("build_forest: populations overlap");
      f.node_of[v] = id;
    }
  }
  for (HullSide side : {HullSide::upper, HullSide::lower})
    for (const CallRecord& c : trace.calls(side)) internal.insert(c.s_star.begin(), c.s_star.end());
  f.internal.assign(internal.begin(), internal.end());

  for (std::size_t v = 0; v < n; ++v) {
    const bool endpoint = static_cast<Index>(v) == f.root_edge.first ||
                          static_cast<Index>(v) == f.root_edge.second;
    if (endpoint == f.node_of[v].has_value())
      throw std::invalid_argument("build_forest: populations do not partition the input");
  }
  return f;
}

bool precedes(Index p, Index q, const QuadForest& f) {
  if (!node_or_none(f, p) || !node_or_none(f, q))
    throw std::invalid_argument("precedes: point has no quadrangle-tree node");
  return precedes_if_placed(p, q, f);
}

std::vector<Index> choice_set(Index p, const QuadForest& f) {
  if (!node_or_none(f, p)) throw std::invalid_argument("choice_set: point has no node");
  std::vector<Index> out;
  for (std::size_t q = 0; q < f.node_of.size(); ++q)
    if (precedes_if_placed(p, static_cast<Index>(q), f)) out.push_back(static_cast<Index>(q));
  return out;
}

std::vector<std::size_t> choice_set_sizes(const QuadForest& f) {
  // population sizes summed over each subtree; children follow parents
  std::vector<std::size_t> below(f.nodes.size(), 0);
  for (std::size_t id = f.nodes.size(); id-- > 0;) {
    const QuadNode& node = f.nodes[id];
    if (node.parent) below[*node.parent] += below[id] + node.population.size();
  }
  std::vector<std::size_t> deeper_in_node(f.node_of.size(), 0);
  for (const QuadNode& node : f.nodes) {
    std::vector<std::pair<Wide, Index>> keyed;
    for (Index v : node.population)
      keyed.emplace_back(depth_key(f.points[v], f.points[node.p], f.points[node.q]), v);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      std::size_t j = i;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
      for (std::size_t t = i; t < j; ++t) deeper_in_node[keyed[t].second] = keyed.size() - j;
      i = j - 1;
    }
  }
  std::vector<std::size_t> out;
  out.reserve(f.internal.size());
  for (Index p : f.internal) {
    const std::size_t id = *f.node_of[p];
    out.push_back(below[id] + deeper_in_node[p]);
  }
  return out;
}

BigInt count_ordered_downdrafts(const QuadForest& f, std::optional<std::size_t> subtree) {
  std::vector<Index> domain;
  for (Index p : f.internal)
    if (!subtree || in_subtree(f, *subtree, *f.node_of[p])) domain.push_back(p);
  if (domain.size() > kOrderedDowndraftCap)
    throw std::invalid_argument("count_ordered_downdrafts: " + std::to_string(domain.size()) +
                                " internal points exceed the cap of " +
                                std::to_string(kOrderedDowndraftCap));
  std::vector<std::vector<Index>> choices;
  for (Index p : domain) {
    auto a = choice_set(p, f);
    if (a.empty()) return 0;
    choices.push_back(std::move(a));
  }
  return DowndraftCounter(std::move(choices)).count();
}

double log2_od_lower_bound(const QuadForest& f) {
  double bits = 0;
  for (std::size_t a : choice_set_sizes(f)) bits += std::log2(static_cast<double>(a));
  return bits;
}

std::vector<SplitVerdict> check_downdraft_split(const RunTrace& trace, const QuadForest& f) {
  if (f.internal.size() > kOrderedDowndraftCap)
    throw std::invalid_argument("check_downdraft_split: too many internal points for exact counts");
  std::vector<BigInt> od(f.nodes.size());
  for (std::size_t id = 0; id < f.nodes.size(); ++id) od[id] = count_ordered_downdrafts(f, id);

  std::vector<SplitVerdict> out;
  std::size_t id = 0;
  for (HullSide side : {HullSide::upper, HullSide::lower}) {
    for (const CallRecord& c : trace.calls(side)) {
      const QuadNode& node = f.nodes.at(id);
      if (node.p != c.p_l || node.q != c.p_r)
        throw std::invalid_argument("check_downdraft_split: trace does not match the forest");
      SplitVerdict v;
      v.node = id;
      v.lhs = od[id];
      v.rhs = power(static_cast<unsigned>(c.s_size), static_cast<unsigned>(c.s_star.size()));
      if (node.left) v.rhs *= od[*node.left];
      if (node.right) v.rhs *= od[*node.right];
      v.ok = v.lhs <= v.rhs;
      out.push_back(std::move(v));
      ++id;
    }
  }
  return out;
}

NoAdmissibleCorner::NoAdmissibleCorner(Index position)
    : std::runtime_error("no admissible corner for position " + std::to_string(position)),
      position_(position) {}

PhiImage phi_map(const PointSet& input, const HullCertificate& cert, const QuadForest& f) {
  const std::size_t n = input.size();
  if (n != f.points.size() || cert.witnesses.size() != n)
    throw std::invalid_argument("phi_map: sizes disagree");
  std::vector<Index> ref(n);
  for (std::size_t i = 0; i < n; ++i) ref[i] = f.index_of(input[static_cast<Index>(i)]);

  PhiImage img;
  img.hull = cert.hull;
  for (std::size_t i = 0; i < n; ++i) {
    const Triple& t = cert.witnesses[i];
    if (t == kSentinel) continue;
    const auto pos = static_cast<Index>(i);
    std::optional<Index> corner;
    for (Index c : t) {
      if (precedes_if_placed(ref[i], ref.at(static_cast<std::size_t>(c)), f)) {
        corner = c;
        break;
      }
    }
    if (!corner) throw NoAdmissibleCorner(pos);
    const Index target = ref[static_cast<std::size_t>(*corner)];
    img.corners.choice.emplace(pos, *corner);
    img.downdraft.phi.emplace(ref[i], target);
    img.downdraft.fiber_order[target].push_back(ref[i]);
  }
  return img;
}

PhiCheck check_phi(const PointSet& p) {
  PhiCheck out;
  const QuadForest f = build_forest(convex_hull_certified(p).trace, p);
  for (const auto& [key, perms] : consistent_witness_lists(p.points())) {
    ++out.witness_lists;
    const std::vector<Triple> w = key.to_list(p.size());
    std::set<PhiImage> images;
    for (const Permutation& perm : perms) {
      ++out.arrays;
      const HullCertificate cert{canonical_hull_list(p.points(), perm), w};
      try {
        PhiImage img = phi_map(p.permuted(perm), cert, f);
        for (const auto& [from, to] : img.downdraft.phi)
          if (!precedes(from, to, f)) ++out.illegal;
        if (!images.insert(std::move(img)).second) ++out.collisions;
      } catch (const NoAdmissibleCorner&) {
        ++out.no_admissible_corner;
      }
    }
  }
  return out;
}

std::vector<Permutation> sample_arrays(const PointSet& p, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = p.size();
  std::vector<Permutation> out;
  Permutation id = identity_permutation(n);
  out.push_back(id);
  out.emplace_back(id.rbegin(), id.rend());

  std::vector<char> on_hull(n, 0);
  for (Index h : convex_hull_certified(p).certificate.hull) on_hull[h] = 1;
  Permutation hull_last;
  for (Index i : id)
    if (!on_hull[i]) hull_last.push_back(i);
  for (Index i : id)
    if (on_hull[i]) hull_last.push_back(i);
  out.push_back(std::move(hull_last));

  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Permutation perm = id;
    shuffle<Index>(perm, rng);
    out.push_back(std::move(perm));
  }
  return out;
}

BoundsReport bounds_report(const PointSet& p, const BoundsOptions& opts) {
  BoundsReport r;
  const std::size_t n = p.size();
  if (n == 0) throw std::invalid_argument("bounds_report: empty input");
  const HullRun run = convex_hull_certified(p);
  const QuadForest forest = build_forest(run.trace, p);
  r.n = n;
  r.k = run.certificate.hull.size();
  for (std::size_t i = n - r.k + 1; i <= n; ++i) r.log2_hl += std::log2(static_cast<double>(i));

  r.log2_od_lower = log2_od_lower_bound(forest);
  std::optional<BigInt> od;
  if (forest.internal.size() <= kOrderedDowndraftCap) {
    od = count_ordered_downdrafts(forest);
    r.log2_od_exact = log2_big(*od);
    bool ok = true;
    for (const auto& v : check_downdraft_split(run.trace, forest)) ok = ok && v.ok;
    r.lemma48_ok = ok;
  }
  const double nd = static_cast<double>(n);
  r.ub_value = nd + nd * std::log2(nd) - r.log2_od_exact.value_or(r.log2_od_lower);

  auto measure = [&](const Permutation& perm) {
    const std::uint64_t b = convex_hull_certified(p.permuted(perm)).trace.counter.branches();
    r.measured_max_branches = std::max(r.measured_max_branches, b);
    r.measured_mean_branches += static_cast<double>(b);
    ++r.arrays_run;
  };
  const bool small = opts.exhaustive_if_small && n <= kExhaustiveArraysMaxN;
  if (small) {
    for_each_permutation(n, measure);
  } else {
    for (const auto& perm : sample_arrays(p, opts.permutation_samples, opts.seed)) measure(perm);
  }
  r.measured_mean_branches /= static_cast<double>(r.arrays_run);

  if (small && n <= kVMaxMaxN) {
    const VMaxResult vm = v_max(p.points());
    r.lb_value = log2_big(factorial(static_cast<unsigned>(n))) - log2_big(BigInt(vm.count));
    if (od) {
      const BigInt bound = *od * power(3, static_cast<unsigned>(n)) *
                           power(static_cast<unsigned>(n), static_cast<unsigned>(r.k));
      r.cor54_ok = BigInt(vm.count) <= bound;
    }
  }
  return r;
}

nlohmann::ordered_json bounds_report_to_json(const BoundsReport& r) {
  nlohmann::ordered_json j;
  auto opt = [](const auto& v) -> nlohmann::ordered_json {
    if (v) return *v;
    return nullptr;
  };
  j["n"] = r.n;
  j["k"] = r.k;
  j["log2_hl"] = r.log2_hl;
  j["log2_od_exact"] = opt(r.log2_od_exact);
  j["log2_od_lower"] = r.log2_od_lower;
  j["ub_value"] = r.ub_value;
  j["measured_max_branches"] = r.measured_max_branches;
  j["lb_value"] = opt(r.lb_value);
  j["cor54_ok"] = opt(r.cor54_ok);
  j["lemma48_ok"] = opt(r.lemma48_ok);
  j["measured_mean_branches"] = r.measured_mean_branches;
  j["arrays_run"] = r.arrays_run;
  return j;
}

}  // namespace certhull
