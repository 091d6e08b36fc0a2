#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "certhull/certify.hpp"
#include "certhull/hull_kms.hpp"
#include "certhull/oracle.hpp"
#include "support.hpp"

using namespace certhull;
using certhull::testing::mixed_instance;

namespace {

bool has_kind(const std::vector<CertificateViolation>& v, CertificateViolation::Kind k) {
  return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.kind == k; });
}

// Ground truth from the oracle module alone.
bool certificate_is_correct(const PointSet& ps, const HullCertificate& cert) {
  const std::size_t n = ps.size();
  if (cert.witnesses.size() != n) return false;
  const auto hull = hull_indices_bruteforce(ps.points());
  std::vector<Point> expect;
  for (Index i : hull) expect.push_back(ps[i]);
  expect = canonicalize_hull(expect);
  if (cert.hull.size() != expect.size()) return false;
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const Index h = cert.hull[i];
    if (h < 0 || static_cast<std::size_t>(h) >= n || ps[h] != expect[i]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Index idx = static_cast<Index>(i);
    const bool on_hull = std::find(hull.begin(), hull.end(), idx) != hull.end();
    Triple t = cert.witnesses[i];
    if (on_hull) {
      if (t != kSentinel) return false;
      continue;
    }
    std::sort(t.begin(), t.end());
    const auto all = witnesses_all(ps.points(), idx);
    if (std::find(all.begin(), all.end(), t) == all.end()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonicalize_hull") {
  CHECK(canonicalize_hull({{2, 0}, {0, 0}, {1, 1}}) == std::vector<Point>{{0, 0}, {2, 0}, {1, 1}});
  const std::vector<Point> canon{{0, 0}, {2, 0}, {1, 1}};
  CHECK(canonicalize_hull(canon) == canon);
  CHECK(canonicalize_hull({{0, 0}, {1, 1}, {2, 0}}) == canon);
  CHECK_THROWS(canonicalize_hull({{0, 0}, {4, 0}, {1, 1}, {0, 4}}));
}

TEST_CASE("tampering is reported with the right kind") {
  PointSet ps(std::vector<Point>{{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}});
  auto cert = convex_hull_certified(ps).certificate;
  REQUIRE(verify_certificate(ps, cert).empty());

  SUBCASE("swap two hull indices") {
    std::swap(cert.hull[1], cert.hull[2]);
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::non_convex_order));
  }
  SUBCASE("witness triangle not containing the point") {
    cert.witnesses[4] = {1, 2, 3};
    CHECK(has_kind(verify_certificate(ps, cert),
                   CertificateViolation::Kind::witness_fails_containment));
  }
  SUBCASE("wrong start") {
    std::rotate(cert.hull.begin(), cert.hull.begin() + 1, cert.hull.end());
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::wrong_start));
  }
  SUBCASE("clockwise order") {
    std::reverse(cert.hull.begin() + 1, cert.hull.end());
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::non_convex_order));
  }
  SUBCASE("missing hull vertex") {
    cert.hull.pop_back();
    cert.witnesses[3] = {0, 1, 2};
    const auto v = verify_certificate(ps, cert);
    CHECK(has_kind(v, CertificateViolation::Kind::point_outside_hull));
  }
  SUBCASE("sentinel on an interior point") {
    cert.witnesses[4] = kSentinel;
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::sentinel_mismatch));
  }
  SUBCASE("self reference") {
    cert.witnesses[4] = {4, 1, 2};
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::malformed_triple));
  }
  SUBCASE("duplicate and out of range") {
    cert.hull[1] = 0;
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::duplicate_hull_index));
    cert.hull[1] = 9;
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::index_out_of_range));
  }
  SUBCASE("wrong length") {
    cert.witnesses.pop_back();
    CHECK(has_kind(verify_certificate(ps, cert), CertificateViolation::Kind::size_mismatch));
  }
}

TEST_CASE("small hulls") {
  PointSet two(std::vector<Point>{{5, 5}, {1, 1}});
  CHECK(verify_certificate(two, {{1, 0}, {kSentinel, kSentinel}}).empty());
  CHECK_FALSE(verify_certificate(two, {{0, 1}, {kSentinel, kSentinel}}).empty());
  CHECK_FALSE(verify_certificate(two, {{1}, {kSentinel, kSentinel}}).empty());
}

TEST_CASE("witness corners may be internal points") {
  PointSet ps(std::vector<Point>{{0, 0}, {20, 0}, {0, 20}, {2, 3}, {9, 2}, {3, 9}, {4, 5}});
  auto cert = convex_hull_certified(ps).certificate;
  cert.witnesses[6] = {3, 4, 5};
  CHECK(verify_certificate(ps, cert).empty());
}

TEST_CASE("json round trip") {
  const PointSet ps = mixed_instance(30, 77);
  const auto cert = convex_hull_certified(ps).certificate;
  const auto j = certificate_to_json(cert);
  CHECK(j.begin().key() == "n");
  const auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.hull == cert.hull);
  CHECK(back.witnesses == cert.witnesses);
  auto bad = j;
  bad["witnesses"][0] = {1, 2};
  CHECK_THROWS(certificate_from_json(nlohmann::json::parse(bad.dump())));
}

TEST_CASE("mutation fuzz agrees with the oracle") {
  SplitMix64 rng(2024);
  std::size_t mutations = 0, rejected = 0, accepted = 0;
  while (mutations < 10000) {
    const PointSet ps = mixed_instance(2 + rng.below(14), rng.next());
    const auto base = convex_hull_certified(ps).certificate;
    const auto n = static_cast<Index>(ps.size());
    for (int m = 0; m < 20; ++m, ++mutations) {
      HullCertificate cert = base;
      switch (rng.below(4)) {
        case 0:
          cert.hull[rng.below(cert.hull.size())] = static_cast<Index>(rng.between(-1, n));
          break;
        case 1: {
          auto& t = cert.witnesses[rng.below(cert.witnesses.size())];
          t[rng.below(3)] = static_cast<Index>(rng.between(-1, n));
          break;
        }
        case 2: {
          const auto i = rng.below(cert.witnesses.size());
          cert.witnesses[i] = cert.witnesses[i] == kSentinel
                                  ? Triple{static_cast<Index>(rng.below(n)), static_cast<Index>(rng.below(n)),
                                           static_cast<Index>(rng.below(n))}
                                  : kSentinel;
          break;
        }
        default: {
          if (cert.hull.size() < 2) break;
          const auto a = rng.below(cert.hull.size()), b = rng.below(cert.hull.size());
          std::swap(cert.hull[a], cert.hull[b]);
        }
      }
      const bool truth = certificate_is_correct(ps, cert);
      const bool verdict = verify_certificate(ps, cert).empty();
      CHECK(truth == verdict);
      (verdict ? accepted : rejected)++;
    }
  }
  CHECK(rejected > 5000);
  CHECK(accepted > 0);
}
