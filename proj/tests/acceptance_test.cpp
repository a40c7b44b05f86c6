// Acceptance run: one PASS/FAIL line per criterion. Each criterion is
// recomputed here against oracles that do not share code with the module
// under test, and the library's own reproduction verdict must agree.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "injrad/acceptance.hpp"
#include "injrad/bounds.hpp"
#include "injrad/flat_cone.hpp"
#include "injrad/hyperbolic.hpp"
#include "injrad/voronoi.hpp"
#include "injrad/warped.hpp"
#include "oracle.hpp"

using namespace injrad;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

const double kYamada = static_cast<double>(oracle::asinh(2 / sqrt(oracle::big(3))));
const double kHalfLn3 = static_cast<double>(log(oracle::big(3)) / 2);
const double kNonsimple = static_cast<double>(2 * oracle::acosh(oracle::big(3)));

// 1. Constants at 1e-9 against 50-digit values; printed figures at their
// printed precision; two-decimal prints at 0.02.
Outcome constants() {
  Outcome o;
  const auto k = bounds::sharp_constants();
  o.require(close(k.yamada_radius, kYamada, 1e-9), "arcsinh(2/sqrt3)");
  o.require(close(k.halfln3, kHalfLn3, 1e-9), "(ln3)/2");
  o.require(close(k.nonsimple_length, kNonsimple, 1e-9), "2 arccosh 3");
  o.require(close(k.yamada_radius, 0.9866473, 1e-6), "print 0.9866473");
  o.require(close(k.halfln3, 0.5493061, 1e-6), "print 0.5493061");
  o.require(close(k.nonsimple_length, 3.5254944, 1e-6), "print 3.5254944");
  o.require(close(k.yamada_radius, 0.97, 0.02), "print 0.97");
  o.require(close(k.halfln3, 0.55, 0.02), "print 0.55");
  o.detail = "tol=1e-9 (prints 1e-6, two-decimal 0.02)" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2. Supremum of the injectivity radius of the thrice-punctured sphere.
Outcome yamada() {
  Outcome o;
  const auto g = hyp::FuchsianGroup::thrice_punctured_sphere();
  const auto r = hyp::sup_injectivity_radius(g, 200, 20, 8);
  o.require(close(r.value, kYamada, 5e-3), "value");
  o.require(close(std::sinh(r.value), 2 / std::sqrt(3.0), 5e-3), "sinh(value)");
  // The reported value is half the systole at the reported point,
  // recomputed here with the cosh distance formula over all words.
  double sys = INFINITY;
  for (const auto& w : hyp::enumerate_words(g, 8)) {
    const auto q = w.map.apply(r.argmax);
    const double dx = q.x - r.argmax.x, dy = q.y - r.argmax.y;
    sys = std::min(sys, std::acosh(1 + (dx * dx + dy * dy) / (2 * q.y * r.argmax.y)));
  }
  o.require(close(sys / 2, r.value, 1e-9), "argmax systole");
  o.detail = "value=" + fmt("%.7f", r.value) + " target=" + fmt("%.7f", kYamada) + " tol=5e-3";
  return o;
}

// 3. Shortest hyperbolic translation length in the level-2 group.
Outcome nonsimple() {
  Outcome o;
  const double l = hyp::translation_length(hyp::MobiusMap::checked(5, 2, 2, 1));
  o.require(close(l, kNonsimple, 1e-12), "translation_length([[5,2],[2,1]])");
  double shortest = INFINITY;
  for (const auto& w : hyp::enumerate_words(hyp::FuchsianGroup::thrice_punctured_sphere(), 6)) {
    const double t = std::abs(w.map.trace());
    if (t <= 2 + 1e-9) continue;
    shortest = std::min(shortest, 2 * std::acosh(t / 2));
  }
  o.require(shortest >= kNonsimple - 1e-9, "word shorter than 2 arccosh 3");
  o.detail = "shortest=" + fmt("%.12f", shortest) + " tol=1e-12/1e-9";
  return o;
}

// 4. Ideal triangle inradius against the closed form.
Outcome ideal_triangle() {
  Outcome o;
  const double r = hyp::ideal_triangle_inradius();
  o.require(close(r, kHalfLn3, 1e-9), "inradius");
  // Equidistance from the three sides of (-1, 1, inf) at (0, sqrt 3).
  const double y = std::sqrt(3.0);
  o.require(close(std::log(y), kHalfLn3, 1e-12) && close(std::asinh(1 / y), kHalfLn3, 1e-12),
            "oracle point");
  o.detail = "inradius=" + fmt("%.12f", r) + " tol=1e-9";
  return o;
}

// 5. Fan bound on random and regular Dirichlet cells.
Outcome fan_bound() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> radius(0.2, 3.0), angle(0, 2 * kPi);
  std::uniform_int_distribution<int> count(3, 12);
  int checked = 0, violations = 0;
  while (checked < 1000) {
    std::vector<Vec2> sites;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) sites.push_back(radius(rng) * unit_vector(angle(rng)));
    const auto cell = voronoi::dirichlet_cell(voronoi::SiteSet(sites), 1e3);
    if (cell.has_clip_edges()) continue;
    ++checked;
    double nearest = INFINITY;
    for (const Vec2& p : sites) nearest = std::min(nearest, norm(p));
    const double r = nearest / 2;
    const int sides = cell.side_count();
    const double rhs = r * r * sides * std::tan(kPi / sides);
    const auto fan = voronoi::fan_lower_bound_check(cell);
    if (!fan.holds || !close(fan.rhs, rhs, 1e-9 * rhs) || voronoi::cell_area(cell) < rhs - 1e-9) {
      ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  double worst = 0.0;
  for (int k : {3, 4, 6, 12, 18}) {
    const double r = 0.75;
    const auto cell = voronoi::dirichlet_cell(voronoi::SiteSet(acceptance::regular_sites(k, r)), 100);
    const double expect = static_cast<double>(k * r * r * tan(oracle::pi() / k));
    const double err = std::abs(voronoi::cell_area(cell) - expect);
    worst = std::max(worst, err);
    o.require(cell.side_count() == k && err <= 1e-9 && voronoi::fan_lower_bound_check(cell).equality,
              "regular " + std::to_string(k) + "-gon");
  }
  o.detail = "random=1000 violations=" + std::to_string(violations) +
             " regular_err=" + fmt("%.1e", worst) + " tol=1e-9";
  return o;
}

// 6. The 18-gon with six cone points of angle 8 pi / 3.
Outcome extremal_flat() {
  Outcome o;
  const auto found = flat::find_triple_cycle_pairing(18, true);
  o.require(found.has_value(), "no pairing");
  if (!found) return o;
  const flat::ConeSurface s(*found);
  o.require(s.euler_characteristic() == -2, "chi");
  // Corner classes recounted from the pairing.
  std::vector<int> seen(18, 0);
  for (const auto& c : s.cycles()) {
    o.require(c.size() == 3, "cycle length");
    for (int v : c) ++seen[v];
  }
  o.require(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }), "corner cover");
  for (double a : s.cone_angles()) o.require(close(a, 8 * kPi / 3, 1e-9), "cone angle");
  const double radius = flat::center_injectivity_radius(s);
  o.require(close(radius, s.apothem(), 1e-6), "center radius");
  const double ratio = radius * radius / (18 * std::tan(kPi / 18));
  const double ks = oracle::katz_sabourau(-2);
  o.require(close(flat::ratio_report(s).recomputed, ks, 1e-6) && close(ratio, ks, 1e-6), "ratio");
  o.detail = "pairing=" + found->to_text().substr(found->to_text().find("pairs=")) ;
  while (!o.detail.empty() && (o.detail.back() == '\n')) o.detail.pop_back();
  o.detail += " ratio=" + fmt("%.7f", ratio) + " tol=1e-6";
  return o;
}

// 7. Flat tori: loops at the center are the lattice vectors.
Outcome tori() {
  Outcome o;
  const double L = 3.5;
  struct Torus {
    int n;
    Vec2 u, v;
    double ratio;
  };
  std::size_t total = 0;
  for (const Torus& t : {Torus{4, {2, 0}, {0, 2}, 0.25},
                         Torus{6, {2, 0}, 2.0 * unit_vector(kPi / 3), 0.2886751}}) {
    std::vector<double> expect;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double l = norm(t.u * double(i) + t.v * double(j));
        if ((i || j) && l <= L) expect.push_back(l);
      }
    }
    std::sort(expect.begin(), expect.end());
    const flat::ConeSurface s(flat::SidePairing::opposite(t.n));
    const auto loops = flat::shortest_loops_at_center(s, L);
    bool match = loops.loops.size() == expect.size();
    for (std::size_t i = 0; match && i < expect.size(); ++i) {
      match = close(loops.loops[i].length, expect[i], 1e-10);
    }
    o.require(match, std::to_string(t.n) + "-gon lattice");
    o.require(close(flat::ratio_report(s).recomputed, t.ratio, 1e-6), "ratio");
    total += expect.size();
  }
  o.detail = "lattice_vectors=" + std::to_string(total) + " tol=1e-10 (ratios 1e-6)";
  return o;
}

// 8. Smoothing certificates for the hyperbolic collar, with curvature
// recomputed from the analytic second derivative.
Outcome smoothing() {
  Outcome o;
  double worst_k = -INFINITY;
  for (auto cls : {warped::CurvatureClass::ge_minus_one, warped::CurvatureClass::le_minus_one,
                   warped::CurvatureClass::le_one}) {
    for (double eps : {0.1, 0.01}) {
      const warped::WarpedMetric wm(warped::cosh_profile(), 1.0, 1.0, cls);
      const auto sm = warped::smooth_metric(wm, eps);
      const auto c = warped::certify(sm);
      const std::string tag = warped::to_string(cls) + "/" + fmt("%g", eps);
      o.require(c.all(), tag + " verdicts");
      const double bound = warped::relaxed_bound(cls, eps);
      const double a = sm.bump().zone_start();
      double gap = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        const double t = i < 2000 ? 2 * a * i / 2000 : 2 * a + (1 - 2 * a) * (i - 2000) / 2001.0;
        for (double th : {0.0, 0.37}) {
          const double F = sm.F(t, th);
          const double K = -sm.F_tt(t, th) / F;
          worst_k = std::max(worst_k, warped::violation(cls, bound, K));
          o.require(warped::violation(cls, bound, K) <= 0, tag + " curvature");
          gap = std::max(gap, std::abs(F - std::cosh(t)));
          if (t >= 2 * a) o.require(F == std::cosh(t), tag + " F = f");
        }
      }
      o.require(gap <= eps, tag + " gap");
      const double w = a;
      const auto even = warped::evenness_check([&](double t) { return sm.F(t, 0.0); }, w, 5);
      const auto control = warped::evenness_check(
          [&](double t) { return sm.F(t, 0.0) + 1e-4 * std::pow(t / w, 3); }, w, 5);
      o.require(even.passes, tag + " evenness");
      o.require(!control.passes, tag + " negative control passed");
    }
  }
  o.detail = "runs=6 worst_violation=" + fmt("%.3e", worst_k) + " evenness_tol=1e-6";
  return o;
}

// 9. Collar inequality on the standard pair and on pairs built at equality.
Outcome collar() {
  Outcome o;
  const auto std_pair = hyp::intersecting_pair_check(hyp::MobiusMap::checked(1, 1, 1, 2),
                                                     hyp::MobiusMap::checked(1, -1, -1, 2));
  o.require(std_pair.holds && close(std_pair.product, 1.25, 1e-12), "standard pair");
  // Trace 3 gives sinh(l/2)^2 = (9/4) - 1.
  o.require(close(std_pair.length_a, 2 * std::acosh(1.5), 1e-12), "standard length");
  for (double l1 : {0.5, 1.0, 2 * std::asinh(1.0), 3.0, 6.0}) {
    const double l2 = 2 * std::asinh(1 / std::sinh(l1 / 2));
    const hyp::MobiusMap a(std::exp(l1 / 2), 0, 0, std::exp(-l1 / 2));
    const hyp::MobiusMap b(std::cosh(l2 / 2), std::sinh(l2 / 2), std::sinh(l2 / 2), std::cosh(l2 / 2));
    const auto c = hyp::intersecting_pair_check(a, b);
    o.require(c.holds && close(c.product, 1.0, 1e-9), "boundary l1=" + fmt("%g", l1));
  }
  o.detail = "product=" + fmt("%.12f", std_pair.product) + " tol=1e-12 (boundary 1e-9)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"constants", constants},         {"yamada_equality", yamada},
      {"nonsimple_geodesic", nonsimple}, {"ideal_triangle", ideal_triangle},
      {"fan_bound", fan_bound},         {"extremal_flat_surface", extremal_flat},
      {"torus_oracles", tori},          {"smoothing_certificates", smoothing},
      {"collar_instance", collar}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int index = static_cast<int>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
      const auto lib = acceptance::run_criterion(index, kSeed);
      o.require(lib.pass, "library verdict FAIL");
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", index,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
