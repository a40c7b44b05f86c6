#pragma once

// Upper half-plane model: Moebius maps, Fuchsian groups given by
// generators, pointwise systoles by word enumeration, and a grid search
// for the supremum of the injectivity radius.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace injrad::hyp {

struct HPoint {
  double x = 0.0;
  double y = 1.0;
};

/// Throws unless y > 0 and both coordinates are finite.
HPoint make_point(double x, double y);

/// z -> (az + b)/(cz + d), stored with ad - bc = 1.
class MobiusMap {
 public:
  MobiusMap() = default;

  /// Scales (a, b, c, d) to unit determinant; the determinant must be positive.
  MobiusMap(double a, double b, double c, double d);

  /// Accepts only matrices already of unit determinant (to 1e-9).
  static MobiusMap checked(double a, double b, double c, double d);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double trace() const { return a_ + d_; }

  HPoint apply(HPoint z) const;
  MobiusMap operator*(const MobiusMap& o) const;
  MobiusMap inverse() const { return from_unit(d_, -b_, -c_, a_); }
  bool is_identity(double tol = 1e-10) const;

  /// Unit-determinant entries without renormalization.
  static MobiusMap from_unit(double a, double b, double c, double d);

 private:
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

double hyp_distance(HPoint p, HPoint q);

/// d(z, m z) computed from |c z^2 + (d - a) z - b|^2 / (4 y^2) = sinh^2(d/2).
double displacement(const MobiusMap& m, HPoint z);

/// 2 arccosh(|tr|/2) for hyperbolic maps, 0 otherwise.
double translation_length(const MobiusMap& m);

/// Distance from p to the geodesic with ideal endpoints u, v (either may be
/// +-infinity, meaning the vertical line through the other).
double distance_to_geodesic(HPoint p, double u, double v);

/// Fixed points on the real line; an infinite endpoint is returned as +inf.
std::pair<double, double> axis_endpoints(const MobiusMap& m);

struct SearchBox {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = 0.3;
  double ymax = 3.0;
};

class FuchsianGroup {
 public:
  FuchsianGroup(std::string name, std::vector<MobiusMap> generators, SearchBox box = {});

  /// Level-2 principal congruence group, generated by z -> z + 2 and
  /// z -> z / (2z + 1); the quotient is the thrice-punctured sphere.
  static FuchsianGroup thrice_punctured_sphere();

  const std::string& name() const { return name_; }
  const std::vector<MobiusMap>& generators() const { return generators_; }
  const SearchBox& box() const { return box_; }

  /// gGg^-1, with the search box left unchanged.
  FuchsianGroup conjugated(const MobiusMap& g) const;

 private:
  std::string name_;
  std::vector<MobiusMap> generators_;
  SearchBox box_;
};

/// A reduced word in the generators. Generator i is written as the letter
/// 'a' + i, its inverse as the upper-case letter.
struct GroupElement {
  MobiusMap map;
  std::string word;
};

/// Nontrivial freely reduced words of length 1..max_length, with duplicate
/// matrices (up to sign, snapped at 1e-10 relative) removed. Shorter words
/// come first.
std::vector<GroupElement> enumerate_words(const FuchsianGroup& group, int max_length);

struct SystoleLandscape {
  HPoint base;
  double systole = 0.0;
  int word_length_used = 0;
  std::string argmin_word;
};

SystoleLandscape pointwise_systole(const FuchsianGroup& group, HPoint p, int word_length);

struct SupRadiusResult {
  double value = 0.0;  // half the pointwise systole at argmax
  HPoint argmax;
  std::string argmin_word;
  int grid = 0;
  int refine_steps = 0;
  int word_length = 0;
  bool word_cap_hit = false;      // argmin word has the maximal length
  bool boundary_limited = false;  // argmax within a grid cell of the box edge
};

SupRadiusResult sup_injectivity_radius(const FuchsianGroup& group, int grid, int refine_steps,
                                       int word_length);

/// Inradius of the ideal triangle (-1, 1, infinity), found by ternary
/// search for the point on the symmetry axis equidistant from the sides.
double ideal_triangle_inradius();

struct PairCheck {
  double length_a = 0.0;
  double length_b = 0.0;
  double product = 0.0;
  bool holds = false;
};

/// Both maps must be hyperbolic with crossing axes (endpoints of B
/// separate those of A); otherwise Errc::precondition.
PairCheck intersecting_pair_check(const MobiusMap& a, const MobiusMap& b,
                                  double tolerance = 1e-9);

}  // namespace injrad::hyp
