#pragma once

// Closed-form constants and inequalities for the injectivity radius of
// surfaces, each paired with an independent extended-precision
// recomputation so callers get a tolerance verdict instead of a bare number.

#include <string>
#include <utility>
#include <vector>

namespace injrad::bounds {

inline constexpr double kDefaultEqualityTolerance = 1e-9;

/// Euler characteristic of a closed surface.
class EulerChar {
 public:
  constexpr explicit EulerChar(int chi) : chi_(chi) {}

  constexpr int value() const { return chi_; }

  /// pi / (6 - 6 chi), the angle entering the hyperbolic sup-radius bound.
  double gamma() const;

  /// 6 (1 - chi): the largest side count of the origin's Dirichlet cell.
  int polygon_sides() const { return 6 * (1 - chi_); }

 private:
  int chi_;
};

/// A named constant together with an independent recomputation.
/// verdict holds iff |closed_form - recomputed| <= tolerance.
struct BoundReport {
  std::string name;
  double closed_form = 0.0;
  double recomputed = 0.0;
  double tolerance = 0.0;
  bool verdict = false;

  static BoundReport make(std::string name, double closed_form, double recomputed,
                          double tolerance);
};

struct Constants {
  double yamada_radius;     // arcsinh(2/sqrt 3), sharp sup-radius lower bound
  double halfln3;           // (ln 3)/2, inradius of the ideal triangle
  double nonsimple_length;  // 2 arccosh 3, shortest non-simple closed geodesic
  double disk_bound;        // pi/2, disk with geodesic boundary
  double sphere_bound;      // pi, the 2-sphere
  double minvol_plane;      // 2 pi (1 + sqrt 2), minimal volume of R^2
};

Constants sharp_constants();

/// The same table as name/value pairs, in a fixed order.
std::vector<std::pair<std::string, double>> constant_table();

/// Each constant checked against an 80-bit ln-form recomputation at
/// `tolerance`, followed by the two-decimal printed values (0.97, 0.55)
/// checked at `rounding_tolerance`.
std::vector<BoundReport> constant_reports(double tolerance = 1e-9,
                                          double rounding_tolerance = 0.02);

/// arccosh(1 / (2 sin gamma_chi)); requires chi <= -1.
double bavard_sup_radius_bound(EulerChar chi);

/// [n tan(pi/n)]^-1 with n = 6(1 - chi); requires chi <= -1.
double katz_sabourau_ratio_bound(EulerChar chi);

/// x tan(pi/x), the fan-area factor of a regular x-gon of unit inradius.
double polygon_tan_factor(double x);

/// d/dx [x tan(pi/x)] = tan(pi/x) - (pi/x)/cos^2(pi/x).
double polygon_tan_factor_derivative(double x);

/// The same derivative written as (sin(2 pi/x) - 2 pi/x) / (2 cos^2(pi/x)).
double polygon_tan_factor_derivative_sine_form(double x);

/// Lower bound 2 pi (1 - cos r) on the area of a metric disk of radius r <= pi
/// under curvature |K| <= 1.
double disk_area_lower_bound(double radius);

/// pi - arccos(area/(2 pi) - 1) for 0 < area <= 4 pi.
double bounded_curvature_radius_bound(double area);

/// sinh(l1/2) sinh(l2/2).
double collar_product(double l1, double l2);

/// collar_product(l1, l2) >= 1 - tolerance. Lengths must be positive.
bool collar_inequality_holds(double l1, double l2,
                             double tolerance = kDefaultEqualityTolerance);

/// Every evaluator above applied to one Euler characteristic (and optionally
/// an area), with recomputations, as report rows.
std::vector<BoundReport> chi_reports(EulerChar chi, double tolerance = 1e-9);

}  // namespace injrad::bounds
