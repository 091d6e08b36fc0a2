#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "certhull/geom.hpp"

namespace certhull {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One "x y" integer pair per line. '#' starts a comment; blank lines are skipped.
std::vector<Point> read_points(std::istream& in);
std::vector<Point> read_points_file(const std::string& path);

void write_points(std::ostream& out, const std::vector<Point>& pts);
void write_points_file(const std::string& path, const std::vector<Point>& pts);

}  // namespace certhull
