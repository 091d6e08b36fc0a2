#pragma once

#include <iosfwd>

#include "certhull/analysis.hpp"
#include "certhull/certify.hpp"
#include "certhull/geom.hpp"

namespace certhull {

/// Static figure: points, witness triangles as light edges, quadrangles as
/// dashed outlines (when a forest is given), hull polygon on top.
void write_svg(std::ostream& out, const PointSet& ps, const HullCertificate& cert,
               const QuadForest* forest = nullptr);

}  // namespace certhull
