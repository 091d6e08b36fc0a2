#pragma once

#include <array>
#include <string>
#include <vector>

#include "certhull/geom.hpp"
#include "json.hpp"

namespace certhull {

using Triple = std::array<Index, 3>;
inline constexpr Triple kSentinel{-1, -1, -1};

/// Hull list plus witness list for one input array.
///
/// `hull` holds the indices of the hull vertices in counterclockwise order,
/// starting at the lexicographically smallest point. `witnesses` has one entry
/// per input position: kSentinel for hull vertices, otherwise three indices
/// whose triangle strictly contains that position's point.
struct HullCertificate {
  std::vector<Index> hull;
  std::vector<Triple> witnesses;

  friend bool operator==(const HullCertificate&, const HullCertificate&) = default;
};

struct CertificateViolation {
  enum class Kind {
    size_mismatch,
    index_out_of_range,
    duplicate_hull_index,
    non_convex_order,
    point_outside_hull,
    wrong_start,
    sentinel_mismatch,
    malformed_triple,
    witness_fails_containment,
  };
  Kind kind;
  std::vector<Index> indices;

  std::string describe() const;
};

std::string to_string(CertificateViolation::Kind kind);

/// Checks a certificate against the input array from scratch. An empty result
/// means the certificate is correct. Uses O(nk) predicate evaluations.
std::vector<CertificateViolation> verify_certificate(const PointSet& input,
                                                     const HullCertificate& cert);

/// Rotates a convex polygon to start at its lexicographic minimum and orients
/// it counterclockwise. Throws std::invalid_argument for non-convex input.
std::vector<Point> canonicalize_hull(std::vector<Point> polygon);

/// {"n": int, "hull": [int], "witnesses": [[int,int,int]]}
nlohmann::ordered_json certificate_to_json(const HullCertificate& cert);

/// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
HullCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace certhull
