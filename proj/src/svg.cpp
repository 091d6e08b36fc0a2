#include "certhull/svg.hpp"

#include <algorithm>
#include <ostream>

namespace certhull {

namespace {

constexpr double kSize = 800;
constexpr double kMargin = 20;

struct Frame {
  double min_x = 0, min_y = 0, scale = 1;

  explicit Frame(const PointSet& ps) {
    if (ps.empty()) return;
    double max_x = static_cast<double>(ps[0].x), max_y = static_cast<double>(ps[0].y);
    min_x = max_x;
    min_y = max_y;
    for (const Point& p : ps.points()) {
      min_x = std::min(min_x, static_cast<double>(p.x));
      min_y = std::min(min_y, static_cast<double>(p.y));
      max_x = std::max(max_x, static_cast<double>(p.x));
      max_y = std::max(max_y, static_cast<double>(p.y));
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1.0});
    scale = (kSize - 2 * kMargin) / extent;
  }

  double sx(const Point& p) const { return kMargin + (static_cast<double>(p.x) - min_x) * scale; }
  double sy(const Point& p) const { return kSize - kMargin - (static_cast<double>(p.y) - min_y) * scale; }
};

void polygon(std::ostream& out, const Frame& fr, const PointSet& ps, std::initializer_list<Index> v,
             const char* style) {
  out << "<polygon points=\"";
  bool first = true;
  for (Index i : v) {
    out << (first ? "" : " ") << fr.sx(ps[i]) << ',' << fr.sy(ps[i]);
    first = false;
  }
  out << "\" " << style << "/>\n";
}

}  // namespace

void write_svg(std::ostream& out, const PointSet& ps, const HullCertificate& cert,
               const QuadForest* forest) {
  const Frame fr(ps);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const Triple& t : cert.witnesses) {
    if (t == kSentinel) continue;
    polygon(out, fr, ps, {t[0], t[1], t[2]}, "fill=\"none\" stroke=\"#c8c8c8\" stroke-width=\"0.6\"");
  }
  if (forest) {
    for (const QuadNode& q : forest->nodes) {
      polygon(out, fr, ps, {q.p, q.q, q.s, q.r},
              "fill=\"none\" stroke=\"#3070c0\" stroke-width=\"1\" stroke-dasharray=\"5,4\"");
    }
  }
  if (!cert.hull.empty()) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < cert.hull.size(); ++i)
      out << (i ? " " : "") << fr.sx(ps[cert.hull[i]]) << ',' << fr.sy(ps[cert.hull[i]]);
    out << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Point& p = ps[static_cast<Index>(i)];
    const bool hull = cert.witnesses.size() == ps.size() && cert.witnesses[i] == kSentinel;
    out << "<circle cx=\"" << fr.sx(p) << "\" cy=\"" << fr.sy(p) << "\" r=\"" << (hull ? 3.5 : 2.5)
        << "\" fill=\"" << (hull ? "#c03030" : "#404040") << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace certhull
