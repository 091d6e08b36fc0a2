#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "certhull/gen.hpp"
#include "certhull/oracle.hpp"
#include "certhull/pointio.hpp"

using namespace certhull;

namespace {

GenSpec spec_of(GenKind kind, std::size_t n, std::uint64_t seed, Coord range = Coord{1} << 30) {
  GenSpec s;
  s.kind = kind;
  s.n = n;
  s.seed = seed;
  s.coord_range = range;
  return s;
}

}  // namespace

TEST_CASE("parabola") {
  const auto ps = generate(spec_of(GenKind::parabola, 4, 0));
  CHECK(std::vector<Point>(ps.points().begin(), ps.points().end()) ==
        std::vector<Point>{{1, 1}, {2, 4}, {3, 9}, {4, 16}});
  CHECK(hull_bruteforce(ps.points()).size() == 4);
}

TEST_CASE("clustered hull is small") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ps = generate(spec_of(GenKind::clustered, 20, seed));
    CHECK(hull_bruteforce(ps.points()).size() <= 8);
  }
}

TEST_CASE("convex kind is in convex position") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ps = generate(spec_of(GenKind::convex, 50, seed, 100000));
    CHECK(hull_bruteforce(ps.points()).size() == 50);
  }
}

TEST_CASE("every kind is in general position and in range") {
  for (GenKind kind : {GenKind::disk, GenKind::convex, GenKind::clustered, GenKind::parabola}) {
    for (std::size_t n : {1u, 2u, 3u, 17u, 300u, 700u}) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Coord range = 1 << 24;
        const auto ps = generate(spec_of(kind, n, seed, range));
        CHECK(ps.size() == n);
        CHECK_FALSE(validate_general_position(ps.points()));
        if (kind != GenKind::parabola)
          for (const Point& p : ps.points()) CHECK((std::max(std::abs(p.x), std::abs(p.y)) <= range));
      }
    }
  }
}

TEST_CASE("determinism") {
  for (GenKind kind : {GenKind::disk, GenKind::convex, GenKind::clustered}) {
    std::ostringstream a, b;
    const auto s = spec_of(kind, 100, 7);
    const auto p1 = generate(s), p2 = generate(s);
    write_points(a, {p1.points().begin(), p1.points().end()});
    write_points(b, {p2.points().begin(), p2.points().end()});
    CHECK(a.str() == b.str());
    const auto p3 = generate(spec_of(kind, 100, 8));
    CHECK_FALSE(std::equal(p1.points().begin(), p1.points().end(), p3.points().begin()));
  }
}

TEST_CASE("unsatisfiable specs") {
  CHECK_THROWS_AS(generate(spec_of(GenKind::disk, 100, 1, 3)), UnsatisfiableSpec);
  CHECK_THROWS_AS(generate(spec_of(GenKind::convex, 100, 1, 3)), UnsatisfiableSpec);
  CHECK_THROWS_AS(generate(spec_of(GenKind::clustered, 100, 1, 50)), UnsatisfiableSpec);
  CHECK_THROWS_AS(generate(spec_of(GenKind::disk, 0, 1)), std::invalid_argument);
  CHECK_THROWS(parse_gen_kind("spiral"));
  CHECK(parse_gen_kind("clustered") == GenKind::clustered);
}

TEST_CASE("primes") {
  CHECK(prime_at_most(2) == 2);
  CHECK(prime_at_most(100) == 97);
  CHECK(prime_at_most((std::uint64_t{1} << 61) - 1) == (std::uint64_t{1} << 61) - 1);
  CHECK(prime_at_most(std::uint64_t{1} << 31) == 2147483647u);
}

TEST_CASE("point file parsing") {
  std::istringstream in("# header\n1 2\n\n  -3\t4  # trailing\n+5 -6\r\n");
  CHECK(read_points(in) == std::vector<Point>{{1, 2}, {-3, 4}, {5, -6}});
  for (const char* bad : {"1\n", "1 2 3\n", "a b\n", "1.5 2\n", "1,2\n", "9999999999999999999 0\n",
                          "3000000000000000000 0\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(read_points(b), ParseError);
  }
  std::istringstream second("0 0\n1 x\n");
  try {
    read_points(second);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
