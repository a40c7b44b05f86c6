#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "injrad/bounds.hpp"
#include "injrad/error.hpp"
#include "injrad/flat_cone.hpp"

using namespace injrad;
using namespace injrad::flat;

namespace {

constexpr double kPi = std::numbers::pi;

// Vertex classes by union-find over the corner identifications, written
// independently of the corner walk in the library.
std::vector<int> class_sizes(const std::vector<int>& partner, const std::vector<bool>& flip) {
  const int n = static_cast<int>(partner.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int c) { return parent[c] == c ? c : parent[c] = find(parent[c]); };
  auto unite = [&](int a, int b) { parent[find((a + n) % n)] = find((b + n) % n); };
  for (int i = 0; i < n; ++i) {
    const int j = partner[i];
    if (flip.empty() || !flip[i]) {
      unite(i - 1, j);
      unite(i, j - 1);
    } else {
      unite(i - 1, j - 1);
      unite(i, j);
    }
  }
  std::vector<int> count(n, 0);
  for (int c = 0; c < n; ++c) ++count[find(c)];
  std::vector<int> sizes;
  for (int v : count) {
    if (v) sizes.push_back(v);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Every fixed-point-free involution of 0..n-1 in canonical order.
void involutions(std::vector<int>& p, std::vector<std::vector<int>>& out) {
  const auto it = std::find(p.begin(), p.end(), -1);
  if (it == p.end()) {
    out.push_back(p);
    return;
  }
  const int i = static_cast<int>(it - p.begin());
  for (int j = i + 1; j < static_cast<int>(p.size()); ++j) {
    if (p[j] != -1) continue;
    p[i] = j;
    p[j] = i;
    involutions(p, out);
    p[i] = p[j] = -1;
  }
}

std::vector<std::vector<int>> all_involutions(int n) {
  std::vector<int> p(n, -1);
  std::vector<std::vector<int>> out;
  involutions(p, out);
  return out;
}

std::vector<double> lattice_lengths(Vec2 u, Vec2 v, double max_length) {
  std::vector<double> out;
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const double l = norm(u * double(i) + v * double(j));
      if ((i || j) && l <= max_length) out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sizes_of(const std::vector<std::vector<int>>& cycles) {
  std::vector<int> s;
  for (const auto& c : cycles) s.push_back(static_cast<int>(c.size()));
  std::sort(s.begin(), s.end());
  return s;
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

TEST_SUITE("flat_cone") {
  TEST_CASE("opposite pairings") {
    const ConeSurface square(SidePairing::opposite(4));
    CHECK(square.cycles().size() == 1);
    CHECK(square.euler_characteristic() == 0);
    CHECK(square.orientable());
    CHECK(square.cone_angles().front() == doctest::Approx(2 * kPi));

    const ConeSurface hex(SidePairing::opposite(6));
    CHECK(sizes_of(hex.cycles()) == std::vector<int>{3, 3});
    CHECK(hex.euler_characteristic() == 0);

    const ConeSurface oct(SidePairing::opposite(8));
    CHECK(oct.cycles().size() == 1);
    CHECK(oct.euler_characteristic() == -2);
    CHECK(genus(oct.pairing()) == 2);
    CHECK(oct.cone_angles().front() == doctest::Approx(6 * kPi));
  }

  TEST_CASE("cycles agree with union-find for every pairing of 6 and 8 sides") {
    for (int n : {6, 8}) {
      for (const auto& p : all_involutions(n)) {
        const SidePairing pairing(p);
        CAPTURE(pairing.to_text());
        CHECK(sizes_of(vertex_cycles(pairing)) == class_sizes(p, {}));
        CHECK(euler_characteristic(pairing) ==
              static_cast<int>(class_sizes(p, {}).size()) - n / 2 + 1);
        CHECK(is_orientable(pairing));
      }
    }
  }

  TEST_CASE("flipped pairs: union-find and orientability") {
    const std::vector<int> p{2, 3, 0, 1};
    const std::vector<bool> f{true, false, true, false};
    const SidePairing pairing(p, f);
    CHECK(sizes_of(vertex_cycles(pairing)) == class_sizes(p, f));
    CHECK_FALSE(is_orientable(pairing));
    // One vertex class: the Klein bottle.
    CHECK(euler_characteristic(pairing) == 0);
    CHECK(genus(pairing) == 2);
    const SidePairing both(p, {true, true, true, true});
    CHECK(sizes_of(vertex_cycles(both)) == class_sizes(p, {true, true, true, true}));
    CHECK(euler_characteristic(both) == 1);
    CHECK(genus(both) == 1);
  }

  TEST_CASE("angle bookkeeping and Gauss-Bonnet") {
    for (const auto& p : all_involutions(8)) {
      const ConeSurface s{SidePairing(p)};
      double total = 0.0, defect = 0.0;
      for (std::size_t i = 0; i < s.cycles().size(); ++i) {
        CHECK(s.cone_angles()[i] ==
              doctest::Approx(s.cycles()[i].size() * s.interior_angle()).epsilon(1e-12));
        total += s.cone_angles()[i];
        defect += 2 * kPi - s.cone_angles()[i];
      }
      CHECK(total == doctest::Approx(6 * kPi));
      CHECK(defect == doctest::Approx(2 * kPi * s.euler_characteristic()));
    }
  }

  TEST_CASE("hexagon search matches brute force") {
    std::optional<std::vector<int>> first;
    for (const auto& p : all_involutions(6)) {
      const auto sizes = class_sizes(p, {});
      if (std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 3; })) {
        first = p;
        break;
      }
    }
    REQUIRE(first);
    const auto found = find_triple_cycle_pairing(6, true);
    REQUIRE(found);
    CHECK(found->partners() == *first);
    CHECK(euler_characteristic(*found) == 0);
  }

  TEST_CASE("no triple-cycle octagon") {
    CHECK_FALSE(find_triple_cycle_pairing(8, true).has_value());
    CHECK_FALSE(find_triple_cycle_pairing(8, false).has_value());
    for (const auto& p : all_involutions(8)) {
      const auto sizes = class_sizes(p, {});
      CHECK_FALSE(std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 3; }));
    }
  }

  TEST_CASE("18-gon with six cone points of angle 8pi/3") {
    const auto found = find_triple_cycle_pairing(18, true);
    REQUIRE(found);
    const ConeSurface s(*found);
    CHECK(s.euler_characteristic() == -2);
    CHECK(s.orientable());
    CHECK(genus(s.pairing()) == 2);
    REQUIRE(s.cycles().size() == 6);
    for (double a : s.cone_angles()) CHECK(a == doctest::Approx(8 * kPi / 3).epsilon(1e-12));
    CHECK(sizes_of(s.cycles()) == class_sizes(found->partners(), {}));

    const auto loops = shortest_loops_at_center(s, 2.5);
    REQUIRE_FALSE(loops.loops.empty());
    CHECK(loops.loops.front().length == doctest::Approx(2.0).epsilon(1e-12));
    for (const auto& l : loops.loops) {
      CHECK(l.length == doctest::Approx(norm(l.witness.apply({0, 0}))).epsilon(1e-10));
    }
    const auto ratio = ratio_report(s);
    CHECK(ratio.recomputed <= bounds::katz_sabourau_ratio_bound(bounds::EulerChar(-2)) + 1e-12);
    CHECK(ratio.recomputed == doctest::Approx(1.0 / (18 * std::tan(kPi / 18))).epsilon(1e-10));
  }

  TEST_CASE("enumerated 18-gon pairings are canonical and distinct") {
    const auto list = enumerate_uniform_cycle_pairings(18, true, 3, 5);
    CHECK(list.size() == 5);
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK(canonical_form(list[i]) == list[i]);
      CHECK(euler_characteristic(list[i]) == -2);
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(list[i] == list[j]);
    }
  }

  TEST_CASE("torus loops are lattice vectors") {
    const double L = 4.5;
    struct Case {
      int n;
      Vec2 u, v;
    };
    for (const Case& t : {Case{4, {2, 0}, {0, 2}},
                          Case{6, {2, 0}, 2.0 * unit_vector(kPi / 3)}}) {
      CAPTURE(t.n);
      const ConeSurface s(SidePairing::opposite(t.n));
      const auto search = shortest_loops_at_center(s, L);
      const auto expect = lattice_lengths(t.u, t.v, L);
      REQUIRE(search.loops.size() == expect.size());
      for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(search.loops[i].length == doctest::Approx(expect[i]).epsilon(1e-10));
        CHECK(norm(search.loops[i].witness.apply({0, 0})) ==
              doctest::Approx(search.loops[i].length).epsilon(1e-10));
      }
    }
    CHECK(ratio_report(ConeSurface(SidePairing::opposite(4))).recomputed == doctest::Approx(0.25));
    CHECK(ratio_report(ConeSurface(SidePairing::opposite(6))).recomputed ==
          doctest::Approx(1 / (2 * std::sqrt(3.0))));
  }

  TEST_CASE("loop lengths scale with the apothem") {
    const auto pairing = SidePairing::opposite(6);
    const auto a = shortest_loops_at_center(ConeSurface(pairing, 1.0), 3.0);
    const auto b = shortest_loops_at_center(ConeSurface(pairing, 2.5), 7.5);
    REQUIRE(a.loops.size() == b.loops.size());
    for (std::size_t i = 0; i < a.loops.size(); ++i) {
      CHECK(b.loops[i].length == doctest::Approx(2.5 * a.loops[i].length).epsilon(1e-12));
    }
    CHECK(center_injectivity_radius(ConeSurface(pairing, 2.5)) == doctest::Approx(2.5));
  }

  TEST_CASE("gluings map each side onto its partner") {
    const auto found = find_triple_cycle_pairing(18, true);
    REQUIRE(found);
    const ConeSurface s(*found);
    for (int side = 0; side < s.sides(); ++side) {
      // The neighbor across `side` shares that side, so its center is the
      // reflection of the base center through the side.
      const Vec2 c = s.gluing(side).apply({0, 0});
      CHECK(norm(c) == doctest::Approx(2 * s.apothem()).epsilon(1e-12));
      const int n = s.sides();
      const int j = s.pairing().partner(side);
      const Vec2 a = s.corner((side + n - 1) % n), b = s.corner(side);
      const Vec2 ga = s.gluing(side).apply(s.corner((j + n - 1) % n));
      const Vec2 gb = s.gluing(side).apply(s.corner(j));
      const bool same = (norm(ga - a) < 1e-12 && norm(gb - b) < 1e-12) ||
                        (norm(ga - b) < 1e-12 && norm(gb - a) < 1e-12);
      CHECK(same);
    }
  }

  TEST_CASE("budget and argument errors") {
    UnfoldingOptions tiny;
    tiny.max_copies = 3;
    const ConeSurface hex(SidePairing::opposite(6));
    CHECK(code_of([&] { shortest_loops_at_center(hex, 10.0, tiny); }) == Errc::budget_exceeded);
    CHECK(code_of([&] { shortest_loops_at_center(hex, -1.0); }) == Errc::invalid_argument);
    CHECK(code_of([] { ConeSurface(SidePairing::opposite(4), 0.0); }) == Errc::invalid_argument);
    CHECK(code_of([] { SidePairing({1, 0, 3}); }) == Errc::invalid_argument);
    CHECK(code_of([] { SidePairing({1, 0, 2, 3}); }) == Errc::invalid_argument);
    CHECK(code_of([] { SidePairing::parse("n=4\n"); }) == Errc::parse);
    CHECK(code_of([] { SidePairing::parse("n=4\npairs=(0,1)(2\n"); }) == Errc::parse);
    CHECK(code_of([] { SidePairing::parse("n=4\npairs=(0,1)(1,2)\n"); }) == Errc::invalid_argument);
    CHECK(code_of([] { SidePairing::parse("n=4\npairs=(0,1)(2,3)\ncolor=red\n"); }) == Errc::parse);
    CHECK(code_of([] { find_triple_cycle_pairing(7, true); }) == Errc::invalid_argument);
  }

  TEST_CASE("pairing text round trip") {
    const SidePairing p({2, 3, 0, 1}, {true, false, true, false});
    CHECK(SidePairing::parse(p.to_text()) == p);
    const auto q = SidePairing::parse("# torus\nn=4\npairs=(0,2)(1,3)\n");
    CHECK(q == SidePairing::opposite(4));
  }
}
