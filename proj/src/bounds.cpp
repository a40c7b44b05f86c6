#include "injrad/bounds.hpp"

#include <cmath>
#include <numbers>

#include "injrad/error.hpp"

namespace injrad::bounds {
namespace {

using ld = long double;

const ld kPiL = std::acos(-1.0L);

// ln-forms evaluated in 80-bit arithmetic; independent of the libm
// asinh/acosh used for the closed forms.
ld asinh_ln(ld x) { return std::log(x + std::sqrt(x * x + 1.0L)); }
ld acosh_ln(ld x) { return std::log(x + std::sqrt(x * x - 1.0L)); }

void require_hyperbolic_chi(EulerChar chi, const char* what) {
  if (chi.value() >= 0) {
    throw Error(Errc::domain, std::string(what) + ": requires chi <= -1, got " +
                                  std::to_string(chi.value()));
  }
}

ld bavard_extended(int chi) {
  const ld gamma = kPiL / (6.0L - 6.0L * chi);
  return acosh_ln(1.0L / (2.0L * std::sin(gamma)));
}

ld katz_extended(int chi) {
  const ld n = 6.0L * (1.0L - chi);
  return 1.0L / (n * std::tan(kPiL / n));
}

}  // namespace

double EulerChar::gamma() const { return std::numbers::pi / (6.0 - 6.0 * chi_); }

BoundReport BoundReport::make(std::string name, double closed_form, double recomputed,
                              double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.closed_form = closed_form;
  r.recomputed = recomputed;
  r.tolerance = tolerance;
  r.verdict = std::abs(closed_form - recomputed) <= tolerance;
  return r;
}

Constants sharp_constants() {
  using std::numbers::pi;
  return Constants{
      .yamada_radius = std::asinh(2.0 / std::sqrt(3.0)),
      .halfln3 = std::log(3.0) / 2.0,
      .nonsimple_length = 2.0 * std::acosh(3.0),
      .disk_bound = pi / 2.0,
      .sphere_bound = pi,
      .minvol_plane = 2.0 * pi * (1.0 + std::sqrt(2.0)),
  };
}

std::vector<std::pair<std::string, double>> constant_table() {
  const Constants c = sharp_constants();
  return {
      {"yamada_radius", c.yamada_radius},
      {"halfln3", c.halfln3},
      {"nonsimple_length", c.nonsimple_length},
      {"disk_bound", c.disk_bound},
      {"sphere_bound", c.sphere_bound},
      {"minvol_plane", c.minvol_plane},
  };
}

std::vector<BoundReport> constant_reports(double tolerance, double rounding_tolerance) {
  const Constants c = sharp_constants();
  const ld sqrt3 = std::sqrt(3.0L);
  std::vector<BoundReport> rows;
  rows.push_back(BoundReport::make("yamada_radius", c.yamada_radius,
                                   static_cast<double>(asinh_ln(2.0L / sqrt3)), tolerance));
  rows.push_back(BoundReport::make("halfln3", c.halfln3,
                                   static_cast<double>(std::log(3.0L) / 2.0L), tolerance));
  rows.push_back(BoundReport::make("nonsimple_length", c.nonsimple_length,
                                   static_cast<double>(2.0L * acosh_ln(3.0L)), tolerance));
  rows.push_back(BoundReport::make("disk_bound", c.disk_bound,
                                   static_cast<double>(kPiL / 2.0L), tolerance));
  rows.push_back(
      BoundReport::make("sphere_bound", c.sphere_bound, static_cast<double>(kPiL), tolerance));
  rows.push_back(BoundReport::make(
      "minvol_plane", c.minvol_plane,
      static_cast<double>(2.0L * kPiL * (1.0L + std::sqrt(2.0L))), tolerance));
  // Printed two-decimal approximations.
  rows.push_back(BoundReport::make("yamada_radius_two_decimals", 0.97, c.yamada_radius,
                                   rounding_tolerance));
  rows.push_back(
      BoundReport::make("halfln3_two_decimals", 0.55, c.halfln3, rounding_tolerance));
  return rows;
}

double bavard_sup_radius_bound(EulerChar chi) {
  require_hyperbolic_chi(chi, "bavard_sup_radius_bound");
  return std::acosh(1.0 / (2.0 * std::sin(chi.gamma())));
}

double katz_sabourau_ratio_bound(EulerChar chi) {
  require_hyperbolic_chi(chi, "katz_sabourau_ratio_bound");
  return 1.0 / polygon_tan_factor(chi.polygon_sides());
}

double polygon_tan_factor(double x) {
  if (!(x > 2.0)) {
    throw Error(Errc::domain, "polygon_tan_factor: requires x > 2");
  }
  return x * std::tan(std::numbers::pi / x);
}

double polygon_tan_factor_derivative(double x) {
  if (!(x > 2.0)) {
    throw Error(Errc::domain, "polygon_tan_factor_derivative: requires x > 2");
  }
  const double a = std::numbers::pi / x;
  const double c = std::cos(a);
  return std::tan(a) - a / (c * c);
}

double polygon_tan_factor_derivative_sine_form(double x) {
  if (!(x > 2.0)) {
    throw Error(Errc::domain, "polygon_tan_factor_derivative_sine_form: requires x > 2");
  }
  const double a = std::numbers::pi / x;
  const double c = std::cos(a);
  return (std::sin(2.0 * a) - 2.0 * a) / (2.0 * c * c);
}

double disk_area_lower_bound(double radius) {
  if (!(radius >= 0.0 && radius <= std::numbers::pi)) {
    throw Error(Errc::domain, "disk_area_lower_bound: radius must lie in [0, pi]");
  }
  return 2.0 * std::numbers::pi * (1.0 - std::cos(radius));
}

double bounded_curvature_radius_bound(double area) {
  using std::numbers::pi;
  if (!(area > 0.0 && area <= 4.0 * pi)) {
    throw Error(Errc::domain, "bounded_curvature_radius_bound: area must lie in (0, 4 pi]");
  }
  double arg = area / (2.0 * pi) - 1.0;
  if (arg > 1.0) arg = 1.0;  // area == 4 pi up to rounding
  return pi - std::acos(arg);
}

double collar_product(double l1, double l2) {
  if (!(l1 > 0.0 && l2 > 0.0)) {
    throw Error(Errc::domain, "collar inequality: lengths must be positive");
  }
  return std::sinh(l1 / 2.0) * std::sinh(l2 / 2.0);
}

bool collar_inequality_holds(double l1, double l2, double tolerance) {
  return collar_product(l1, l2) >= 1.0 - tolerance;
}

std::vector<BoundReport> chi_reports(EulerChar chi, double tolerance) {
  std::vector<BoundReport> rows;
  rows.push_back(BoundReport::make("bavard_sup_radius_bound", bavard_sup_radius_bound(chi),
                                   static_cast<double>(bavard_extended(chi.value())),
                                   tolerance));
  rows.push_back(BoundReport::make("katz_sabourau_ratio_bound",
                                   katz_sabourau_ratio_bound(chi),
                                   static_cast<double>(katz_extended(chi.value())), tolerance));
  return rows;
}

}  // namespace injrad::bounds
