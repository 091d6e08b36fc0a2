#include "certhull/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "certhull/certify.hpp"
#include "certhull/hull_kms.hpp"
#include "certhull/oracle.hpp"
#include "certhull/pointio.hpp"
#include "certhull/random.hpp"
#include "certhull/svg.hpp"

namespace certhull {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 1;
  bool json = false;
  bool quiet = false;
  bool no_timing = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputFile {
  std::uint64_t hash = 0;
  std::vector<Point> points;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputFile load_points(const std::string& path) {
  const std::string bytes = slurp(path);
  std::istringstream in(bytes);
  return {fnv1a64(bytes), read_points(in)};
}

std::uint64_t elapsed_ns(Clock::time_point start, const Globals& g) {
  if (g.no_timing) return 0;
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

ordered_json spec_to_json(const GenSpec& s) {
  ordered_json j;
  j["kind"] = std::string(to_string(s.kind));
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["coord_range"] = s.coord_range;
  if (s.kind == GenKind::clustered) j["anchors"] = s.anchors;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> describe(const std::vector<CertificateViolation>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.describe());
  return out;
}

const CLI::IsMember kKindCheck({"disk", "convex", "clustered", "parabola"});

// Maps library exceptions to exit codes.
int guarded(const Globals& g, std::ostream& err, const std::function<int()>& body) {
  auto report = [&](const std::string& what) {
    if (!g.quiet) err << "error: " << what << '\n';
  };
  try {
    return body();
  } catch (const ParseError& e) {
    report(e.what());
    return kExitParse;
  } catch (const nlohmann::json::exception& e) {
    report(e.what());
    return kExitParse;
  } catch (const GeneralPositionError& e) {
    report(e.what());
    return kExitGeneralPosition;
  } catch (const std::exception& e) {
    report(e.what());
    return kExitFailure;
  }
}

struct GenArgs {
  std::string kind = "disk";
  std::size_t n = 0;
  Coord range = Coord{1} << 30;
  std::size_t anchors = 4;
  std::string out = "-";
};

int cmd_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  GenSpec spec;
  spec.kind = parse_gen_kind(a.kind);
  spec.n = a.n;
  spec.seed = g.seed;
  spec.coord_range = a.range;
  spec.anchors = a.anchors;
  const PointSet ps = generate(spec);
  const std::vector<Point> pts(ps.points().begin(), ps.points().end());
  if (a.out == "-") {
    if (!g.quiet) write_points(out, pts);
  } else {
    write_points_file(a.out, pts);
  }
  return kExitOk;
}

struct HullArgs {
  std::string input;
  bool verify = false;
  bool trace = false;
  std::string svg;
  std::string certificate;
};

int cmd_hull(const HullArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const InputFile file = load_points(a.input);
  const PointSet ps(file.points);
  RunReport report;
  report.file_hash = file.hash;
  report.n = ps.size();

  if (!a.certificate.empty()) {
    const HullCertificate cert = certificate_from_json(nlohmann::json::parse(slurp(a.certificate)));
    report.violations = describe(verify_certificate(ps, cert));
    report.verified = report.violations.empty();
    if (!g.quiet) {
      if (g.json) {
        out << run_report_to_json(report).dump() << '\n';
      } else {
        for (const auto& v : report.violations) err << "violation: " << v << '\n';
        out << (report.verified ? "ok" : "rejected") << '\n';
      }
    }
    return report.verified ? kExitOk : kExitVerification;
  }

  const auto start = Clock::now();
  const HullRun run = convex_hull_certified(ps);
  report.wall_ns = elapsed_ns(start, g);
  report.branches.push_back(run.trace.counter.branches());
  if (a.verify) {
    report.violations = describe(verify_certificate(ps, run.certificate));
    report.verified = report.violations.empty();
  }
  std::optional<QuadForest> forest;
  if (a.trace || !a.svg.empty()) forest = build_forest(run.trace, ps);

  if (!a.svg.empty()) {
    std::ofstream svg(a.svg);
    if (!svg) throw IoError("cannot write " + a.svg);
    write_svg(svg, ps, run.certificate, forest ? &*forest : nullptr);
  }

  if (!g.quiet) {
    if (g.json) {
      ordered_json j = run_report_to_json(report);
      j["certificate"] = certificate_to_json(run.certificate);
      if (a.trace) j["forest"] = forest_to_json(*forest);
      out << j.dump() << '\n';
    } else {
      out << certificate_to_json(run.certificate).dump() << '\n';
      if (a.trace)
        for (const auto& node : forest_to_json(*forest)) out << node.dump() << '\n';
      for (const auto& v : report.violations) err << "violation: " << v << '\n';
    }
  }
  return a.verify && !report.verified ? kExitVerification : kExitOk;
}

struct AnalyzeArgs {
  std::string input;
  std::size_t perms = 8;
  bool exhaustive = false;
};

int cmd_analyze(const AnalyzeArgs& a, const Globals& g, std::ostream& out) {
  const InputFile file = load_points(a.input);
  const PointSet ps(file.points);
  BoundsOptions opts;
  opts.permutation_samples = a.perms;
  opts.seed = g.seed;
  opts.exhaustive_if_small = a.exhaustive;

  const auto start = Clock::now();
  const BoundsReport bounds = bounds_report(ps, opts);
  const std::uint64_t wall = elapsed_ns(start, g);
  if (g.quiet) return kExitOk;
  if (!g.json) {
    out << bounds_report_to_json(bounds).dump() << '\n';
    return kExitOk;
  }
  RunReport report;
  report.file_hash = file.hash;
  report.n = ps.size();
  const HullRun run = convex_hull_certified(ps);
  report.violations = describe(verify_certificate(ps, run.certificate));
  report.verified = report.violations.empty();
  if (!opts.exhaustive_if_small || ps.size() > kExhaustiveArraysMaxN) {
    for (const auto& perm : sample_arrays(ps, opts.permutation_samples, opts.seed))
      report.branches.push_back(convex_hull_certified(ps.permuted(perm)).trace.counter.branches());
  }
  report.bounds = bounds;
  report.wall_ns = wall;
  out << run_report_to_json(report).dump() << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string kind = "parabola";
  std::vector<std::size_t> sizes;
  int min_exp = 8;
  int max_exp = 14;
  std::size_t perms = 4;
  std::size_t instances = 1;
  Coord range = Coord{1} << 30;
  std::size_t anchors = 4;
  std::string out = "-";
};

int cmd_bench(const BenchArgs& a, const Globals& g, std::ostream& out) {
  const GenKind kind = parse_gen_kind(a.kind);
  std::vector<std::size_t> sizes = a.sizes;
  if (sizes.empty())
    for (int e = a.min_exp; e <= a.max_exp; ++e) sizes.push_back(std::size_t{1} << e);

  std::ostringstream csv;
  csv << "n,k,max_branches,mean_branches,ub_value,wall_ns\n";
  SplitMix64 seeds(g.seed);
  for (std::size_t n : sizes) {
    for (std::size_t i = 0; i < a.instances; ++i) {
      GenSpec spec;
      spec.kind = kind;
      spec.n = n;
      spec.seed = seeds.next();
      spec.coord_range = a.range;
      spec.anchors = a.anchors;
      const PointSet ps = generate(spec);
      BoundsOptions opts;
      opts.permutation_samples = a.perms;
      opts.seed = spec.seed;
      opts.exhaustive_if_small = false;
      const BoundsReport r = bounds_report(ps, opts);
      const auto start = Clock::now();
      convex_hull_certified(ps);
      const std::uint64_t wall = elapsed_ns(start, g);
      csv << r.n << ',' << r.k << ',' << r.measured_max_branches << ','
          << format_double(r.measured_mean_branches) << ',' << format_double(r.ub_value) << ','
          << wall << '\n';
    }
  }
  if (a.out == "-") {
    if (!g.quiet) out << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw IoError("cannot write " + a.out);
    f << csv.str();
  }
  return kExitOk;
}

struct SweepArgs {
  std::string input;
  std::vector<std::string> kinds;
  std::size_t count = 0;
  std::size_t min_n = 1;
  std::size_t max_n = 64;
  Coord range = Coord{1} << 30;
};

std::vector<std::pair<std::string, PointSet>> sweep_instances(const SweepArgs& a, const Globals& g) {
  std::vector<std::pair<std::string, PointSet>> out;
  if (!a.input.empty()) {
    out.emplace_back(a.input, PointSet(load_points(a.input).points));
    return out;
  }
  for (std::size_t k = 0; k < a.kinds.size(); ++k) {
    const GenKind kind = parse_gen_kind(a.kinds[k]);
    for (const GenSpec& s : sweep_specs(kind, a.count, a.min_n, a.max_n, g.seed + k, a.range))
      out.emplace_back(a.kinds[k], generate(s));
  }
  return out;
}

int cmd_oracle_check(const SweepArgs& a, const Globals& g, std::ostream& out) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // checked, failed
  std::size_t failures = 0;
  for (const auto& [label, ps] : sweep_instances(a, g)) {
    const HullRun run = convex_hull_certified(ps);
    std::vector<Point> got;
    for (Index i : run.certificate.hull) got.push_back(ps[i]);
    const bool ok = got == canonicalize_hull(hull_bruteforce(ps.points())) &&
                    verify_certificate(ps, run.certificate).empty();
    auto& t = tally[label];
    ++t.first;
    if (!ok) ++t.second, ++failures;
  }
  if (!g.quiet) {
    if (g.json) {
      ordered_json j;
      for (const auto& [label, t] : tally) j[label] = {{"checked", t.first}, {"failed", t.second}};
      out << j.dump() << '\n';
    } else {
      for (const auto& [label, t] : tally)
        out << label << ": " << t.first << " checked, " << t.second << " failed\n";
    }
  }
  return failures ? kExitVerification : kExitOk;
}

int cmd_phi_test(const SweepArgs& a, const Globals& g, std::ostream& out) {
  PhiCheck total;
  std::size_t instances = 0;
  for (const auto& [label, ps] : sweep_instances(a, g)) {
    const PhiCheck c = check_phi(ps);
    total.witness_lists += c.witness_lists;
    total.arrays += c.arrays;
    total.no_admissible_corner += c.no_admissible_corner;
    total.illegal += c.illegal;
    total.collisions += c.collisions;
    ++instances;
  }
  if (!g.quiet) {
    ordered_json j;
    j["instances"] = instances;
    j["witness_lists"] = total.witness_lists;
    j["arrays"] = total.arrays;
    j["no_admissible_corner"] = total.no_admissible_corner;
    j["illegal"] = total.illegal;
    j["collisions"] = total.collisions;
    out << (g.json ? j.dump() : j.dump(2)) << '\n';
  }
  return total.ok() ? kExitOk : kExitVerification;
}

void add_sweep_options(CLI::App* app, SweepArgs& a, std::size_t count, std::size_t max_n) {
  a.count = count;
  a.max_n = max_n;
  app->add_option("input", a.input, "point file; overrides the generated sweep");
  app->add_option("--kinds", a.kinds, "generator kinds")->delimiter(',')->check(kKindCheck);
  app->add_option("--count", a.count, "instances per kind");
  app->add_option("--min-n", a.min_n)->check(CLI::PositiveNumber);
  app->add_option("--max-n", a.max_n)->check(CLI::PositiveNumber);
  app->add_option("--range", a.range, "coordinate bound")->check(CLI::PositiveNumber);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

nlohmann::ordered_json forest_to_json(const QuadForest& f) {
  ordered_json nodes = ordered_json::array();
  for (std::size_t id = 0; id < f.nodes.size(); ++id) {
    const QuadNode& q = f.nodes[id];
    auto opt = [](const std::optional<std::size_t>& v) -> ordered_json {
      if (v) return *v;
      return nullptr;
    };
    ordered_json j;
    j["id"] = id;
    j["side"] = q.side == HullSide::upper ? "upper" : "lower";
    j["depth"] = q.depth;
    j["quad"] = {q.p, q.q, q.s, q.r};
    j["parent"] = opt(q.parent);
    j["left"] = opt(q.left);
    j["right"] = opt(q.right);
    j["population"] = q.population;
    nodes.push_back(std::move(j));
  }
  return nodes;
}

nlohmann::ordered_json run_report_to_json(const RunReport& r) {
  ordered_json j;
  if (r.spec) j["spec"] = spec_to_json(*r.spec);
  if (r.file_hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(*r.file_hash));
    j["file_hash"] = buf;
  }
  j["n"] = r.n;
  j["verified"] = r.verified;
  j["violations"] = r.violations;
  j["branches"] = r.branches;
  j["bounds"] = r.bounds ? bounds_report_to_json(*r.bounds) : ordered_json(nullptr);
  j["wall_ns"] = r.wall_ns;
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Output-sensitive convex hulls with witness certificates", "certhull"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "PRNG seed");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--quiet", g.quiet, "print nothing; rely on the exit code");
  app.add_flag("--no-timing", g.no_timing, "report wall_ns as 0 so output is reproducible");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated point set");
  gen_cmd->add_option("--kind", gen.kind, "disk | convex | clustered | parabola")->check(kKindCheck);
  gen_cmd->add_option("-n,--n", gen.n)->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--range", gen.range, "coordinate bound")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--anchors", gen.anchors, "hull anchors for clustered sets");
  gen_cmd->add_option("-o,--out", gen.out, "output path, - for stdout");

  HullArgs hull;
  auto* hull_cmd = app.add_subcommand("hull", "compute a certified hull");
  hull_cmd->add_option("input", hull.input)->required();
  hull_cmd->add_flag("--verify", hull.verify, "verify the certificate");
  hull_cmd->add_flag("--trace", hull.trace, "dump the quadrangle forest");
  hull_cmd->add_option("--svg", hull.svg, "write a figure");
  hull_cmd->add_option("--certificate", hull.certificate, "verify this certificate instead of computing one");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "bound report for a point set");
  analyze_cmd->add_option("input", analyze.input)->required();
  analyze_cmd->add_option("--perms", analyze.perms, "sampled permutations");
  analyze_cmd->add_flag("--exhaustive-if-small", analyze.exhaustive, "all n! arrays and V_max for n <= 7");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "branch counts over a size sweep as CSV");
  bench_cmd->add_option("--kind", bench.kind)->check(kKindCheck);
  bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
  bench_cmd->add_option("--min-exp", bench.min_exp);
  bench_cmd->add_option("--max-exp", bench.max_exp);
  bench_cmd->add_option("--perms", bench.perms);
  bench_cmd->add_option("--instances", bench.instances);
  bench_cmd->add_option("--range", bench.range)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--anchors", bench.anchors);
  bench_cmd->add_option("-o,--out", bench.out);

  SweepArgs oracle{.input = {}, .kinds = {"disk", "clustered", "parabola"}};
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare hulls against gift wrapping");
  add_sweep_options(oracle_cmd, oracle, 1000, 64);

  SweepArgs phi{.input = {}, .kinds = {"disk"}};
  auto* phi_cmd = app.add_subcommand("phi-test", "check phi on every consistent array");
  add_sweep_options(phi_cmd, phi, 25, 6);
  phi.min_n = 4;

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  return guarded(g, err, [&] {
    if (*gen_cmd) return cmd_gen(gen, g, out);
    if (*hull_cmd) return cmd_hull(hull, g, out, err);
    if (*analyze_cmd) return cmd_analyze(analyze, g, out);
    if (*bench_cmd) return cmd_bench(bench, g, out);
    if (*oracle_cmd) return cmd_oracle_check(oracle, g, out);
    return cmd_phi_test(phi, g, out);
  });
}

}  // namespace certhull
