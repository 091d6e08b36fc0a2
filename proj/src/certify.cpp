#include "certhull/certify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace certhull {

namespace {

using Kind = CertificateViolation::Kind;

bool valid_index(Index i, std::size_t n) { return i >= 0 && static_cast<std::size_t>(i) < n; }

}  // namespace

std::string to_string(CertificateViolation::Kind kind) {
  switch (kind) {
    case Kind::size_mismatch: return "size mismatch";
    case Kind::index_out_of_range: return "index out of range";
    case Kind::duplicate_hull_index: return "duplicate hull index";
    case Kind::non_convex_order: return "non-convex order";
    case Kind::point_outside_hull: return "point outside hull";
    case Kind::wrong_start: return "hull does not start at the leftmost point";
    case Kind::sentinel_mismatch: return "sentinel mismatch";
    case Kind::malformed_triple: return "malformed triple";
    case Kind::witness_fails_containment: return "witness fails containment";
  }
  return "unknown";
}

std::string CertificateViolation::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  if (!indices.empty()) {
    os << " [";
    for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
    os << "]";
  }
  return os.str();
}

std::vector<CertificateViolation> verify_certificate(const PointSet& input,
                                                     const HullCertificate& cert) {
  std::vector<CertificateViolation> out;
  const std::size_t n = input.size();
  const std::vector<Index>& h = cert.hull;
  DecisionCounter ctr;

  if (cert.witnesses.size() != n)
    out.push_back({Kind::size_mismatch, {static_cast<Index>(cert.witnesses.size())}});
  if (h.empty() || h.size() > n) {
    out.push_back({Kind::size_mismatch, {static_cast<Index>(h.size())}});
    return out;
  }

  // (1) distinct, in range
  std::vector<char> on_hull(n, 0);
  bool hull_indices_ok = true;
  for (Index v : h) {
    if (!valid_index(v, n)) {
      out.push_back({Kind::index_out_of_range, {v}});
      hull_indices_ok = false;
    } else if (on_hull[v]) {
      out.push_back({Kind::duplicate_hull_index, {v}});
      hull_indices_ok = false;
    } else {
      on_hull[v] = 1;
    }
  }
  if (!hull_indices_ok) return out;

  // (2) strictly convex counterclockwise polygon containing every point
  const std::size_t k = h.size();
  if (k >= 3) {
    for (std::size_t i = 0; i < k; ++i) {
      const Index a = h[i], b = h[(i + 1) % k], c = h[(i + 2) % k];
      if (orient(input[a], input[b], input[c], ctr) <= 0)
        out.push_back({Kind::non_convex_order, {a, b, c}});
    }
    for (std::size_t i = 0; i < k; ++i) {
      const Index a = h[i], b = h[(i + 1) % k];
      for (Index p = 0; p < static_cast<Index>(n); ++p) {
        if (p == a || p == b) continue;
        if (orient(input[a], input[b], input[p], ctr) < 0)
          out.push_back({Kind::point_outside_hull, {p, a, b}});
      }
    }
  } else if (k != n) {
    // a segment or a single point cannot enclose anything else in general position
    for (Index p = 0; p < static_cast<Index>(n); ++p)
      if (!on_hull[p]) out.push_back({Kind::point_outside_hull, {p}});
  }

  // (3) starts at the lexicographically smallest point
  Index leftmost = 0;
  for (Index p = 1; p < static_cast<Index>(n); ++p)
    if (input[p] < input[leftmost]) leftmost = p;
  if (h.front() != leftmost) out.push_back({Kind::wrong_start, {h.front(), leftmost}});

  // (4) + (5) witness list
  const std::size_t m = std::min(n, cert.witnesses.size());
  for (std::size_t i = 0; i < m; ++i) {
    const Index idx = static_cast<Index>(i);
    const Triple& t = cert.witnesses[i];
    const bool sentinel = t == kSentinel;
    if (on_hull[i] != sentinel) {
      out.push_back({Kind::sentinel_mismatch, {idx}});
      continue;
    }
    if (sentinel) continue;
    const bool well_formed = valid_index(t[0], n) && valid_index(t[1], n) &&
                             valid_index(t[2], n) && t[0] != idx && t[1] != idx &&
                             t[2] != idx && t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
    if (!well_formed) {
      out.push_back({Kind::malformed_triple, {idx, t[0], t[1], t[2]}});
      continue;
    }
    const Point &a = input[t[0]], &b = input[t[1]], &c = input[t[2]];
    if (orient(a, b, c, ctr) == 0 || !in_triangle_strict(input[idx], a, b, c, ctr))
      out.push_back({Kind::witness_fails_containment, {idx, t[0], t[1], t[2]}});
  }
  return out;
}

std::vector<Point> canonicalize_hull(std::vector<Point> polygon) {
  const std::size_t k = polygon.size();
  if (k == 0) return polygon;
  auto start = std::min_element(polygon.begin(), polygon.end());
  std::rotate(polygon.begin(), start, polygon.end());
  if (k <= 2) return polygon;

  DecisionCounter ctr;
  const int turn = orient(polygon[0], polygon[1], polygon[2], ctr);
  if (turn == 0) throw std::invalid_argument("canonicalize_hull: degenerate polygon");
  if (turn < 0) std::reverse(polygon.begin() + 1, polygon.end());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || j == (i + 1) % k) continue;
      if (orient(polygon[i], polygon[(i + 1) % k], polygon[j], ctr) <= 0)
        throw std::invalid_argument("canonicalize_hull: polygon is not strictly convex");
    }
  }
  return polygon;
}

nlohmann::ordered_json certificate_to_json(const HullCertificate& cert) {
  nlohmann::ordered_json j;
  j["n"] = cert.witnesses.size();
  j["hull"] = cert.hull;
  auto w = nlohmann::ordered_json::array();
  for (const Triple& t : cert.witnesses) w.push_back({t[0], t[1], t[2]});
  j["witnesses"] = std::move(w);
  return j;
}

HullCertificate certificate_from_json(const nlohmann::json& j) {
  HullCertificate cert;
  const auto n = j.at("n").get<std::size_t>();
  cert.hull = j.at("hull").get<std::vector<Index>>();
  for (const auto& t : j.at("witnesses")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("witness entry is not a triple");
    cert.witnesses.push_back({t[0].get<Index>(), t[1].get<Index>(), t[2].get<Index>()});
  }
  if (cert.witnesses.size() != n) throw std::invalid_argument("witness count disagrees with n");
  return cert;
}

}  // namespace certhull
