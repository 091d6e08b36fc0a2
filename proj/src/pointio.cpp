#include "certhull/pointio.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace certhull {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool parse_coord(std::string_view s, std::size_t& pos, Coord& out) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  const char* first = s.data() + pos;
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{}) return false;
  pos = static_cast<std::size_t>(ptr - s.data());
  return true;
}

}  // namespace

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    std::size_t pos = 0;
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) continue;

    Point p;
    if (!parse_coord(line, pos, p.x)) throw ParseError(lineno, "expected integer x");
    if (pos == line.size() || (line[pos] != ' ' && line[pos] != '\t'))
      throw ParseError(lineno, "expected whitespace after x");
    if (!parse_coord(line, pos, p.y)) throw ParseError(lineno, "expected integer y");
    if (pos != line.size()) throw ParseError(lineno, "trailing characters");
    if (!in_coord_range(p)) throw ParseError(lineno, "coordinate out of range");
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Point>& pts) {
  for (const Point& p : pts) out << p.x << ' ' << p.y << '\n';
}

void write_points_file(const std::string& path, const std::vector<Point>& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_points(out, pts);
}

}  // namespace certhull
