// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "certhull/analysis.hpp"
#include "certhull/bigint.hpp"
#include "certhull/certify.hpp"
#include "certhull/gen.hpp"
#include "certhull/hull_kms.hpp"
#include "certhull/oracle.hpp"
#include "certhull/random.hpp"

using namespace certhull;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

PointSet gen(GenKind kind, std::size_t n, std::uint64_t seed, Coord range = Coord{1} << 30) {
  GenSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  s.coord_range = range;
  return generate(s);
}

// Small instances with interior points: alternating disk and clustered sets.
std::vector<PointSet> small_instances(std::size_t count, std::size_t min_n, std::size_t max_n,
                                      std::uint64_t seed) {
  std::vector<PointSet> out;
  const auto disks = sweep_specs(GenKind::disk, count, min_n, max_n, seed, 1 << 20);
  const auto clusters = sweep_specs(GenKind::clustered, count, min_n, max_n, seed ^ 0xA5A5, 1 << 20);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate(i % 2 ? clusters[i] : disks[i]));
  return out;
}

Outcome correctness_vs_oracle() {
  std::size_t checked = 0, bad = 0;
  for (GenKind kind : {GenKind::disk, GenKind::clustered, GenKind::parabola}) {
    for (const GenSpec& s : sweep_specs(kind, 1000, 1, 64, 101 + static_cast<int>(kind))) {
      const PointSet ps = generate(s);
      const HullRun run = convex_hull_certified(ps);
      std::vector<Point> got;
      for (Index i : run.certificate.hull) got.push_back(ps[i]);
      const bool ok = got == canonicalize_hull(hull_bruteforce(ps.points())) &&
                      verify_certificate(ps, run.certificate).empty();
      ++checked;
      bad += !ok;
    }
  }
  return {bad == 0, std::to_string(checked) + " instances, " + std::to_string(bad) + " mismatches"};
}

Outcome reference_configuration() {
  const std::vector<Point> pts{{0, 0}, {12, 0}, {0, 12}, {1, 1}, {3, 1}, {2, 4}};
  std::vector<Triple> w1(6, kSentinel), w2(6, kSentinel);
  w1[3] = w1[4] = w1[5] = {0, 1, 2};
  w2[3] = {0, 4, 5};
  w2[4] = {1, 3, 5};
  w2[5] = {2, 3, 4};
  DecisionCounter scratch;
  bool contained = true;
  for (const auto* w : {&w1, &w2})
    for (std::size_t i = 3; i < 6; ++i) {
      const Triple& t = (*w)[i];
      contained = contained && in_triangle_strict(pts[i], pts[t[0]], pts[t[1]], pts[t[2]], scratch);
    }
  const auto c1 = count_V(pts, WitnessKey::from_list(w1));
  const auto c2 = count_V(pts, WitnessKey::from_list(w2));
  const auto vm = v_max(pts).count;
  return {contained && c1 == 36 && c2 == 6 && vm == 36,
          "count_V " + std::to_string(c1) + " and " + std::to_string(c2) + ", v_max " +
              std::to_string(vm) + (contained ? ", containment verified" : ", containment FAILED")};
}

Outcome split_inequality() {
  std::size_t used = 0, nodes = 0, bad = 0, skipped = 0;
  SplitMix64 rng(303);
  while (used < 200) {
    const bool clustered = rng.below(2);
    const std::size_t n = 3 + rng.below(clustered ? 12 : 18);
    const PointSet ps = gen(clustered ? GenKind::clustered : GenKind::disk, n, rng.next(), 1 << 20);
    const HullRun run = convex_hull_certified(ps);
    const QuadForest f = build_forest(run.trace, ps);
    if (f.internal.size() > kOrderedDowndraftCap) {
      ++skipped;
      continue;
    }
    for (const SplitVerdict& v : check_downdraft_split(run.trace, f)) {
      ++nodes;
      bad += !v.ok;
    }
    ++used;
  }
  return {bad == 0, std::to_string(used) + " instances (" + std::to_string(skipped) +
                        " over the internal-point cap skipped), " + std::to_string(nodes) +
                        " nodes, " + std::to_string(bad) + " violations"};
}

Outcome vmax_bound() {
  std::size_t bad = 0;
  double tightest = -INFINITY;
  const auto instances = small_instances(50, 3, 6, 404);
  for (const PointSet& ps : instances) {
    const HullRun run = convex_hull_certified(ps);
    const QuadForest f = build_forest(run.trace, ps);
    const auto n = static_cast<unsigned>(ps.size());
    const auto k = static_cast<unsigned>(run.certificate.hull.size());
    const BigInt rhs = count_ordered_downdrafts(f) * power(3, n) * power(n, k);
    const BigInt vm = v_max(ps.points()).count;
    bad += vm > rhs;
    tightest = std::max(tightest, log2_big(vm) - log2_big(rhs));
  }
  return {bad == 0, std::to_string(instances.size()) + " instances, " + std::to_string(bad) +
                        " violations, max log2(V_max / bound) = " + fmt("%.2f", tightest)};
}

Outcome phi_injective() {
  PhiCheck total;
  const auto instances = small_instances(25, 4, 6, 505);
  for (const PointSet& ps : instances) {
    const PhiCheck c = check_phi(ps);
    total.witness_lists += c.witness_lists;
    total.arrays += c.arrays;
    total.no_admissible_corner += c.no_admissible_corner;
    total.illegal += c.illegal;
    total.collisions += c.collisions;
  }
  return {total.ok(), std::to_string(instances.size()) + " instances, " +
                          std::to_string(total.witness_lists) + " witness lists, " +
                          std::to_string(total.arrays) + " arrays, " +
                          std::to_string(total.no_admissible_corner) + " undefined, " +
                          std::to_string(total.illegal) + " illegal, " +
                          std::to_string(total.collisions) + " collisions"};
}

Outcome information_bound() {
  std::size_t bad = 0;
  double min_slack = 1e9;
  std::size_t arrays = 0;
  const auto instances = small_instances(25, 3, 7, 606);
  for (const PointSet& ps : instances) {
    const std::size_t n = ps.size();
    std::uint64_t worst = 0;
    for_each_permutation(n, [&](const Permutation& perm) {
      worst = std::max(worst, convex_hull_certified(ps.permuted(perm)).trace.counter.branches());
      ++arrays;
    });
    const BigInt nf = factorial(static_cast<unsigned>(n));
    const BigInt vm = v_max(ps.points()).count;
    const auto k = hull_indices_bruteforce(ps.points()).size();
    const BigInt two_w = BigInt(1) << static_cast<unsigned>(worst);
    // max >= log2(n!/V) <=> 2^max * V >= n!, compared exactly
    const bool ok = two_w * vm >= nf && two_w * factorial(static_cast<unsigned>(n - k)) >= nf;
    bad += !ok;
    min_slack = std::min(min_slack, static_cast<double>(worst) - (log2_big(nf) - log2_big(vm)));
  }
  return {bad == 0, std::to_string(instances.size()) + " instances, " + std::to_string(arrays) +
                        " arrays, " + std::to_string(bad) +
                        " violations, min(max - log2(n!/V_max)) = " + fmt("%.2f", min_slack)};
}

struct Sample {
  std::size_t n;
  double ratio;
};

std::vector<Sample> ratio_samples(std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const GenKind kinds[] = {GenKind::disk, GenKind::clustered, GenKind::parabola, GenKind::convex};
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    const GenKind kind = kinds[rng.below(4)];
    const auto e = 3 + static_cast<int>(rng.below(10));  // 2^3 .. 2^12
    const std::size_t n = (std::size_t{1} << e) + rng.below(std::size_t{1} << e);
    const PointSet ps = gen(kind, std::min<std::size_t>(n, 4096), rng.next());
    BoundsOptions opts;
    opts.permutation_samples = 4;
    opts.seed = rng.next();
    opts.exhaustive_if_small = false;
    const BoundsReport r = bounds_report(ps, opts);
    const double nd = static_cast<double>(r.n);
    const double denom = nd + nd * std::log2(nd) - r.log2_od_lower;
    out.push_back({r.n, static_cast<double>(r.measured_max_branches) / denom});
  }
  return out;
}

Outcome upper_bound_surrogate() {
  double c = 0;
  for (const Sample& s : ratio_samples(300, 707)) c = std::max(c, s.ratio);
  double worst = 0;
  std::size_t over = 0;
  const auto fresh = ratio_samples(200, 7070707);
  for (const Sample& s : fresh) {
    worst = std::max(worst, s.ratio);
    over += s.ratio > 1.1 * c;
  }
  return {over == 0, "calibrated c = " + fmt("%.3f", c) + " on 300 training instances; fresh max " +
                         fmt("%.3f", worst) + " over 200 (" + std::to_string(over) + " above 1.1c)"};
}

struct Trend {
  double mean, slope;
};

// Least-squares slope of y against log2 n.
Trend trend(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(pts.size());
  for (auto [x, y] : pts) sx += x, sy += y, sxx += x * x, sxy += x * y;
  return {sy / m, (m * sxy - sx * sy) / (m * sxx - sx * sx)};
}

Outcome scaling() {
  std::vector<std::pair<double, double>> parabola, clustered;
  std::size_t max_k = 0;
  for (int e = 8; e <= 14; ++e) {
    const std::size_t n = std::size_t{1} << e;
    BoundsOptions opts;
    opts.permutation_samples = 4;
    opts.seed = 808 + static_cast<std::uint64_t>(e);
    opts.exhaustive_if_small = false;
    const double nd = static_cast<double>(n);
    const BoundsReport p = bounds_report(gen(GenKind::parabola, n, 0), opts);
    parabola.emplace_back(e, static_cast<double>(p.measured_max_branches) / (nd * std::log2(nd)));
    const BoundsReport c = bounds_report(gen(GenKind::clustered, n, 909 + e), opts);
    max_k = std::max(max_k, c.k);
    clustered.emplace_back(e, static_cast<double>(c.measured_max_branches) / nd);
  }
  const Trend tp = trend(parabola), tc = trend(clustered);
  const bool ok = std::abs(tp.slope) < 0.05 * tp.mean && std::abs(tc.slope) < 0.05 * tc.mean && max_k <= 8;
  return {ok, "parabola branches/(n log n) mean " + fmt("%.3f slope %.4f", tp.mean, tp.slope) +
                  "; clustered branches/n mean " + fmt("%.3f slope %.4f", tc.mean, tc.slope) +
                  " (k <= " + std::to_string(max_k) + ")"};
}

Outcome order_and_structure() {
  std::size_t instances = 0, bad_order = 0, bad_partition = 0, bad_hl = 0;
  const auto sets = small_instances(150, 1, 9, 1001);
  for (const PointSet& ps : sets) {
    ++instances;
    const std::size_t n = ps.size();
    const QuadForest f = build_forest(convex_hull_certified(ps).trace, ps);

    std::vector<int> seen(n, 0);
    for (const QuadNode& node : f.nodes)
      for (Index v : node.population) ++seen[v];
    for (std::size_t v = 0; v < n; ++v) {
      const bool endpoint = Index(v) == f.root_edge.first || Index(v) == f.root_edge.second;
      bad_partition += seen[v] != (endpoint ? 0 : 1);
    }

    std::vector<Index> placed;
    for (std::size_t v = 0; v < n; ++v)
      if (f.node_of[v]) placed.push_back(Index(v));
    for (Index a : placed) {
      bad_order += precedes(a, a, f);
      for (Index b : placed) {
        const bool ab = precedes(a, b, f);
        bad_order += ab && precedes(b, a, f);
        for (Index c : placed) bad_order += ab && precedes(b, c, f) && !precedes(a, c, f);
      }
    }

    if (n <= 7) {
      std::set<std::vector<Index>> lists;
      for_each_permutation(n, [&](const Permutation& perm) {
        lists.insert(canonical_hull_list(ps.points(), perm));
      });
      const auto k = static_cast<unsigned>(hull_indices_bruteforce(ps.points()).size());
      bad_hl += BigInt(lists.size()) != falling_factorial(static_cast<unsigned>(n), k) ||
                count_hull_lists(ps.points()) != falling_factorial(static_cast<unsigned>(n), k);
    }
  }
  return {bad_order + bad_partition + bad_hl == 0,
          std::to_string(instances) + " instances; order violations " + std::to_string(bad_order) +
              ", partition violations " + std::to_string(bad_partition) + ", hull-list mismatches " +
              std::to_string(bad_hl)};
}

}  // namespace

int main() {
  run(1, "correctness vs oracle", correctness_vs_oracle);
  run(2, "six-point reference witness counts", reference_configuration);
  run(3, "downdraft split inequality", split_inequality);
  run(4, "V_max against the downdraft bound", vmax_bound);
  run(5, "phi defined and injective", phi_injective);
  run(6, "information-theoretic lower bound", information_bound);
  run(7, "empirical upper bound", upper_bound_surrogate);
  run(8, "output-sensitive scaling", scaling);
  run(9, "partial order and structure", order_and_structure);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
