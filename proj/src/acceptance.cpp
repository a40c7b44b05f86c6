#include "injrad/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "injrad/error.hpp"

namespace injrad::acceptance {
namespace {

using report::Json;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Criterion constants_suite() {
  Criterion c{1, "constants", true, Json::object()};
  const auto k = bounds::sharp_constants();
  const struct {
    const char* name;
    double value;
    double printed;
  } printed[] = {{"yamada_radius", k.yamada_radius, 0.9866473},
                 {"halfln3", k.halfln3, 0.5493061},
                 {"nonsimple_length", k.nonsimple_length, 3.5254944}};
  for (const auto& p : printed) {
    const bool ok = close(p.value, p.printed, 1e-6);
    c.details[p.name] = {{"value", p.value}, {"printed", p.printed}, {"pass", ok}};
    c.pass = c.pass && ok;
  }
  Json rows = Json::array();
  for (const auto& r : bounds::constant_reports(1e-9, 0.02)) {
    rows.push_back(report::to_json(r));
    c.pass = c.pass && r.verdict;
  }
  c.details["rows"] = std::move(rows);
  return c;
}

Criterion yamada_equality() {
  Criterion c{2, "yamada_equality", false, Json::object()};
  const auto group = hyp::FuchsianGroup::thrice_punctured_sphere();
  const auto r = hyp::sup_injectivity_radius(group, 200, 20, 8);
  const double target = std::asinh(2.0 / std::sqrt(3.0));
  c.details = report::sup_radius_report(group, r);
  c.details["target"] = target;
  c.pass = close(r.value, target, 5e-3) && close(std::sinh(r.value), 2.0 / std::sqrt(3.0), 5e-3);
  return c;
}

Criterion nonsimple_length() {
  Criterion c{3, "nonsimple_geodesic", false, Json::object()};
  const double target = 2.0 * std::acosh(3.0);
  const double ab = hyp::translation_length(hyp::MobiusMap::checked(5, 2, 2, 1));
  const auto words = hyp::enumerate_words(hyp::FuchsianGroup::thrice_punctured_sphere(), 6);
  double shortest = INFINITY;
  std::string arg;
  std::size_t hyperbolic = 0;
  for (const auto& w : words) {
    if (std::abs(w.map.trace()) <= 2.0 + 1e-9) continue;
    ++hyperbolic;
    const double l = hyp::translation_length(w.map);
    if (l < shortest) {
      shortest = l;
      arg = w.word;
    }
  }
  c.details = {{"ab_length", ab},
               {"target", target},
               {"words", words.size()},
               {"hyperbolic_words", hyperbolic},
               {"shortest", shortest},
               {"shortest_word", arg}};
  c.pass = close(ab, target, 1e-12) && shortest >= target - 1e-9;
  return c;
}

Criterion ideal_triangle() {
  Criterion c{4, "ideal_triangle_disk", false, Json::object()};
  const double r = hyp::ideal_triangle_inradius();
  const double target = std::log(3.0) / 2.0;
  c.details = {{"inradius", r}, {"target", target}};
  c.pass = close(r, target, 1e-9);
  return c;
}

Criterion fan_property(std::uint64_t seed) {
  Criterion c{5, "fan_bound", true, Json::object()};
  int violations = 0;
  double min_slack = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const auto cell = voronoi::dirichlet_cell(voronoi::SiteSet(random_bounded_sites(seed, i)), 1e3);
    const auto fan = voronoi::fan_lower_bound_check(cell);
    if (!fan.holds) ++violations;
    min_slack = std::min(min_slack, fan.lhs / fan.rhs - 1.0);
  }
  Json regular = Json::array();
  for (int k : {3, 4, 6, 12, 18}) {
    const auto cell = voronoi::dirichlet_cell(voronoi::SiteSet(regular_sites(k, 1.0)), 10.0);
    const auto fan = voronoi::fan_lower_bound_check(cell);
    const bool ok = cell.side_count() == k && close(fan.lhs, fan.rhs, 1e-9) && fan.equality;
    regular.push_back({{"k", k}, {"lhs", fan.lhs}, {"rhs", fan.rhs}, {"pass", ok}});
    c.pass = c.pass && ok;
  }
  c.details = {{"random_sets", 1000},
               {"violations", violations},
               {"min_relative_slack", min_slack},
               {"regular", std::move(regular)}};
  c.pass = c.pass && violations == 0;
  return c;
}

Criterion extremal_flat() {
  Criterion c{6, "extremal_flat_surface", false, Json::object()};
  const auto found = flat::find_triple_cycle_pairing(18, true);
  if (!found) {
    c.details = {{"found", false}};
    return c;
  }
  const double target_angle = 8.0 * std::numbers::pi / 3.0;
  const double ks = bounds::katz_sabourau_ratio_bound(bounds::EulerChar(-2));
  std::vector<flat::SidePairing> candidates{*found};
  for (auto& p : flat::enumerate_uniform_cycle_pairings(18, true, 3, 8)) candidates.push_back(p);
  Json tried = Json::array();
  for (const auto& pairing : candidates) {
    const flat::ConeSurface s(pairing);
    bool angles = true;
    for (double a : s.cone_angles()) angles = angles && close(a, target_angle, 1e-9);
    const double radius = flat::center_injectivity_radius(s);
    const auto ratio = flat::ratio_report(s, 1e-6);
    const bool ok = s.euler_characteristic() == -2 && s.orientable() && angles &&
                    close(radius, s.apothem(), 1e-6) && ratio.verdict &&
                    close(ratio.recomputed, ks, 1e-6);
    tried.push_back({{"pairing", pairing.to_text()},
                     {"chi", s.euler_characteristic()},
                     {"cone_angles_ok", angles},
                     {"center_injectivity_radius", radius},
                     {"ratio", ratio.recomputed},
                     {"pass", ok}});
    if (ok) {
      c.pass = true;
      break;
    }
  }
  c.details = {{"found", true}, {"bound", ks}, {"pairings", std::move(tried)}};
  return c;
}

std::vector<double> lattice_lengths(Vec2 u, Vec2 v, double max_length) {
  std::vector<double> out;
  const int span = static_cast<int>(std::ceil(4.0 * max_length / std::min(norm(u), norm(v)))) + 1;
  for (int i = -span; i <= span; ++i) {
    for (int j = -span; j <= span; ++j) {
      if (i == 0 && j == 0) continue;
      const double l = norm(u * static_cast<double>(i) + v * static_cast<double>(j));
      if (l <= max_length) out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Criterion torus_oracles() {
  Criterion c{7, "torus_oracles", true, Json::array()};
  const double L = 3.5;
  const struct {
    const char* name;
    int n;
    Vec2 u, v;
    double ratio;
  } tori[] = {{"square", 4, {2, 0}, {0, 2}, 0.25},
              {"hexagonal", 6, unit_vector(0.0) * 2.0, unit_vector(std::numbers::pi / 3) * 2.0,
               0.2886751}};
  for (const auto& t : tori) {
    const flat::ConeSurface s(flat::SidePairing::opposite(t.n));
    const auto search = flat::shortest_loops_at_center(s, L);
    std::vector<double> got;
    for (const auto& l : search.loops) got.push_back(l.length);
    const auto expect = lattice_lengths(t.u, t.v, L);
    bool match = got.size() == expect.size();
    for (std::size_t i = 0; match && i < got.size(); ++i) match = close(got[i], expect[i], 1e-10);
    const auto ratio = flat::ratio_report(s, 1e-6);
    const bool ok = match && ratio.verdict && close(ratio.recomputed, t.ratio, 1e-6);
    c.details.push_back({{"torus", t.name},
                         {"loops", got.size()},
                         {"lattice_vectors", expect.size()},
                         {"lengths_match", match},
                         {"ratio", ratio.recomputed},
                         {"pass", ok}});
    c.pass = c.pass && ok;
  }
  return c;
}

Criterion smoothing() {
  Criterion c{8, "smoothing_certificates", true, Json::array()};
  using namespace warped;
  for (auto cls : {CurvatureClass::ge_minus_one, CurvatureClass::le_minus_one,
                   CurvatureClass::le_one}) {
    for (double eps : {0.1, 0.01}) {
      const WarpedMetric wm(cosh_profile(), 1.0, 1.0, cls);
      const auto sm = smooth_metric(wm, eps);
      const auto cert = certify(sm);
      Json row = report::smoothing_report(wm, cert);
      const bool ok = cert.all() && cert.sup_profile_gap <= eps;
      row["pass"] = ok;
      c.details.push_back(std::move(row));
      c.pass = c.pass && ok;
    }
  }
  const WarpedMetric wm(cosh_profile(), 1.0, 1.0, CurvatureClass::ge_minus_one);
  const auto sm = smooth_metric(wm, 0.1);
  const double w = sm.bump().zone_start();
  const auto corrupted = evenness_check(
      [&](double t) { return sm.F(t, 0.0) + 1e-4 * std::pow(t / w, 3); }, w, 5);
  c.details.push_back({{"negative_control", "t^3 injected"}, {"rejected", !corrupted.passes}});
  c.pass = c.pass && !corrupted.passes;
  return c;
}

Criterion collar() {
  Criterion c{9, "collar_instance", true, Json::object()};
  const auto standard = hyp::intersecting_pair_check(hyp::MobiusMap::checked(1, 1, 1, 2),
                                                     hyp::MobiusMap::checked(1, -1, -1, 2));
  c.details["standard"] = report::pair_check_report(standard);
  c.pass = standard.holds && close(standard.product, 1.25, 1e-12);
  Json boundary = Json::array();
  for (double l1 : {0.5, 1.0, 2.0 * std::asinh(1.0), 3.0, 6.0}) {
    const double l2 = 2.0 * std::asinh(1.0 / std::sinh(l1 / 2.0));
    const auto a = hyp::MobiusMap::checked(std::exp(l1 / 2), 0, 0, std::exp(-l1 / 2));
    const double ch = std::cosh(l2 / 2), sh = std::sinh(l2 / 2);
    const auto b = hyp::MobiusMap(ch, sh, sh, ch);
    const auto check = hyp::intersecting_pair_check(a, b);
    const bool ok = check.holds && close(check.product, 1.0, 1e-9);
    Json row = report::pair_check_report(check);
    row["pass"] = ok;
    boundary.push_back(std::move(row));
    c.pass = c.pass && ok;
  }
  c.details["boundary"] = std::move(boundary);
  return c;
}

}  // namespace

std::vector<Vec2> regular_sites(int k, double r) {
  if (k < 3) throw Error(Errc::invalid_argument, "regular cell needs k >= 3");
  std::vector<Vec2> sites;
  for (int i = 0; i < k; ++i) sites.push_back(unit_vector(2.0 * std::numbers::pi * i / k) * (2.0 * r));
  return sites;
}

std::vector<Vec2> random_bounded_sites(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  for (;;) {
    const int count = 3 + static_cast<int>(rng() % 10);
    std::vector<Vec2> sites;
    for (int i = 0; i < count; ++i) {
      const double radius = 0.2 + 2.8 * unit_draw(rng);
      sites.push_back(unit_vector(2.0 * std::numbers::pi * unit_draw(rng)) * radius);
    }
    if (!voronoi::dirichlet_cell(voronoi::SiteSet(sites), 1e3).has_clip_edges()) return sites;
  }
}

Criterion run_criterion(int index, std::uint64_t seed) {
  switch (index) {
    case 1:
      return constants_suite();
    case 2:
      return yamada_equality();
    case 3:
      return nonsimple_length();
    case 4:
      return ideal_triangle();
    case 5:
      return fan_property(seed);
    case 6:
      return extremal_flat();
    case 7:
      return torus_oracles();
    case 8:
      return smoothing();
    case 9:
      return collar();
    default:
      throw Error(Errc::invalid_argument, "criterion index must be 1.." +
                                              std::to_string(kCriterionCount));
  }
}

std::vector<Criterion> run_all(std::uint64_t seed) {
  std::vector<Criterion> out;
  for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, seed));
  return out;
}

Json summary(std::uint64_t seed, const std::vector<Criterion>& results) {
  Json doc;
  doc["seed"] = seed;
  bool all = true;
  Json rows = Json::array();
  Json details = Json::array();
  for (const auto& c : results) {
    all = all && c.pass;
    rows.push_back({{"index", c.index}, {"name", c.name}, {"pass", c.pass}});
    details.push_back({{"index", c.index}, {"name", c.name}, {"details", c.details}});
  }
  doc["all_pass"] = all;
  doc["rows"] = std::move(rows);
  doc["criteria"] = std::move(details);
  return doc;
}

}  // namespace injrad::acceptance
