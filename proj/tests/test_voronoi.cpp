#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "injrad/bounds.hpp"
#include "injrad/error.hpp"
#include "injrad/voronoi.hpp"

using namespace injrad;
using namespace injrad::voronoi;

namespace {

std::vector<Vec2> ring(int k, double radius, double phase = 0.0) {
  std::vector<Vec2> s;
  for (int i = 0; i < k; ++i) s.push_back(radius * unit_vector(phase + 2 * std::numbers::pi * i / k));
  return s;
}

// Area of {x : <x, p> <= |p|^2/2 for all p} inside the box, by a fine
// midpoint raster; independent of the clipping code.
double raster_area(const std::vector<Vec2>& sites, double box, int n) {
  const double h = 2 * box / n;
  long inside = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 x{-box + (i + 0.5) * h, -box + (j + 0.5) * h};
      bool ok = true;
      for (const Vec2& p : sites) {
        if (dot(x, p) > dot(p, p) / 2) {
          ok = false;
          break;
        }
      }
      inside += ok;
    }
  }
  return static_cast<double>(inside) * h * h;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an injrad::Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_SUITE("voronoi") {
  TEST_CASE("square lattice neighbours give the unit square") {
    const auto cell = dirichlet_cell(SiteSet({{2, 0}, {-2, 0}, {0, 2}, {0, -2}}), 100);
    CHECK(cell.side_count() == 4);
    CHECK(cell_area(cell) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cell_inradius(cell) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(cell.has_clip_edges());
    const auto fan = fan_lower_bound_check(cell);
    CHECK(fan.holds);
    CHECK(fan.equality);
  }

  TEST_CASE("hexagonal ring gives a regular hexagon") {
    const auto cell = dirichlet_cell(SiteSet(ring(6, 2.0)), 100);
    CHECK(cell.side_count() == 6);
    CHECK(cell_area(cell) == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(fan_lower_bound_check(cell).equality);
  }

  TEST_CASE("triangular ring") {
    const auto cell = dirichlet_cell(SiteSet(ring(3, 2.0)), 100);
    CHECK(cell.side_count() == 3);
    CHECK(cell_area(cell) == doctest::Approx(3 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cell_inradius(cell) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("elongated rectangle is strict") {
    const auto cell = dirichlet_cell(SiteSet({{1, 0}, {-1, 0}, {0, 4}, {0, -4}}), 100);
    CHECK(cell_area(cell) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cell_inradius(cell) == doctest::Approx(0.5).epsilon(1e-12));
    const auto fan = fan_lower_bound_check(cell);
    CHECK(fan.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fan.holds);
    CHECK_FALSE(fan.equality);
  }

  TEST_CASE("a single site leaves clip edges and refuses the fan check") {
    const auto cell = dirichlet_cell(SiteSet({{2, 0}}), 10);
    CHECK(cell.has_clip_edges());
    CHECK(cell_area(cell) == doctest::Approx(20.0 * 11.0).epsilon(1e-12));
    CHECK(code_of([&] { fan_lower_bound_check(cell); }) == Errc::precondition);
  }

  TEST_CASE("redundant sites are dropped and the cell is unchanged") {
    auto sites = ring(6, 2.0);
    const auto base = dirichlet_cell(SiteSet(sites), 100);
    sites.push_back({10, 0});
    sites.push_back({3, 3});
    sites.push_back(sites.front());
    const auto more = dirichlet_cell(SiteSet(sites), 100);
    CHECK(more.side_count() == 6);
    CHECK(cell_area(more) == doctest::Approx(cell_area(base)).epsilon(1e-12));
  }

  TEST_CASE("random site sets: area, inradius and fan inequality") {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> radius(0.2, 3.0), angle(0, 2 * std::numbers::pi);
    std::uniform_int_distribution<int> count(3, 50);
    int bounded = 0;
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Vec2> sites;
      const int k = count(rng);
      for (int i = 0; i < k; ++i) sites.push_back(radius(rng) * unit_vector(angle(rng)));
      const auto cell = dirichlet_cell(SiteSet(sites), 1e3);
      if (cell.has_clip_edges()) continue;
      ++bounded;
      CAPTURE(trial);
      // Vertices satisfy every bisector constraint.
      for (const Vec2& v : cell.vertices()) {
        for (const Vec2& p : sites) CHECK(dot(v, p) <= dot(p, p) / 2 + 1e-9);
      }
      // Inradius equals half the distance to the nearest site.
      double nearest = 1e300;
      for (const Vec2& p : sites) nearest = std::min(nearest, norm(p));
      CHECK(cell_inradius(cell) == doctest::Approx(nearest / 2).epsilon(1e-12));
      const auto fan = fan_lower_bound_check(cell);
      CHECK(fan.holds);
      CHECK(fan.lhs >= fan.rhs - 1e-9);
      CHECK(cell.side_count() <= k);
      // Adding a site never increases the area.
      sites.push_back(radius(rng) * unit_vector(angle(rng)));
      CHECK(cell_area(dirichlet_cell(SiteSet(sites), 1e3)) <= cell_area(cell) + 1e-9);
    }
    CHECK(bounded > 50);
  }

  TEST_CASE("area agrees with a raster count") {
    const std::vector<Vec2> sites{{1.3, 0.2}, {-0.7, 1.1}, {-0.9, -1.4}, {0.4, -1.6}, {2.0, 1.5}};
    const auto cell = dirichlet_cell(SiteSet(sites), 5);
    REQUIRE_FALSE(cell.has_clip_edges());
    CHECK(cell_area(cell) == doctest::Approx(raster_area(sites, 2.0, 2000)).epsilon(2e-3));
  }

  TEST_CASE("max cell sides") {
    CHECK(max_cell_sides(-1) == 12);
    CHECK(max_cell_sides(-2) == 18);
    CHECK(max_cell_sides(-3) == 24);
    CHECK(max_cell_sides(0, true) == 6);
    CHECK(code_of([] { max_cell_sides(0); }) == Errc::domain);
    CHECK(code_of([] { max_cell_sides(1, true); }) == Errc::domain);
  }

  TEST_CASE("site parsing") {
    const auto s = SiteSet::parse("# ring\n2 0\n\n-2 0 # left\n0 2\n0 -2\n");
    CHECK(s.size() == 4);
    CHECK(code_of([] { SiteSet::parse("1 x\n"); }) == Errc::parse);
    CHECK(code_of([] { SiteSet::parse("# nothing\n"); }) == Errc::invalid_argument);
    CHECK(code_of([] { SiteSet({{0, 0}}); }) == Errc::invalid_argument);
    CHECK(code_of([] { SiteSet({{NAN, 1}}); }) == Errc::invalid_argument);
  }
}
