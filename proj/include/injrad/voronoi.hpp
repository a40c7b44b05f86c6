#pragma once

// Dirichlet-Voronoi cell of the origin in the Euclidean plane, built by
// clipping a bounding square against the perpendicular bisectors of the
// sites, plus the fan lower bound on its area.

#include <span>
#include <string_view>
#include <vector>

#include "injrad/vec2.hpp"

namespace injrad::voronoi {

inline constexpr double kDefaultEpsilon = 1e-12;

/// Nonempty, finite set of planar points distinct from the origin.
class SiteSet {
 public:
  explicit SiteSet(std::vector<Vec2> sites);

  /// One `x y` pair per line; `#` starts a comment; blank lines ignored.
  static SiteSet parse(std::string_view text);

  std::span<const Vec2> sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }

 private:
  std::vector<Vec2> sites_;
};

/// {x : <normal, x> <= offset} with a unit normal.
struct HalfPlane {
  Vec2 normal;
  double offset = 0.0;
  bool clip = false;  // side of the bounding square, not a bisector
  int site = -1;      // index into the SiteSet for bisectors
};

/// Convex polygon containing the origin. Edge i runs from vertex i to vertex
/// i+1 (counterclockwise) and lies on halfplanes()[edge_plane(i)]. Only
/// half-planes that support an edge are stored.
class ConvexCell {
 public:
  ConvexCell(std::vector<Vec2> vertices, std::vector<int> edge_planes,
             std::vector<HalfPlane> halfplanes);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::span<const HalfPlane> halfplanes() const { return halfplanes_; }
  int edge_plane(std::size_t edge) const { return edge_planes_[edge]; }
  int side_count() const { return static_cast<int>(vertices_.size()); }
  bool has_clip_edges() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<int> edge_planes_;
  std::vector<HalfPlane> halfplanes_;
};

/// Intersection of the bisector half-planes {<x, p> <= |p|^2/2} with the
/// square [-clip_radius, clip_radius]^2; redundant constraints dropped.
ConvexCell dirichlet_cell(const SiteSet& sites, double clip_radius,
                          double epsilon = kDefaultEpsilon);

/// Shoelace area; needs at least three vertices.
double cell_area(const ConvexCell& cell);

/// Distance from the origin to the nearest edge line.
double cell_inradius(const ConvexCell& cell);

struct FanCheck {
  double lhs = 0.0;  // cell area
  double rhs = 0.0;  // inradius^2 * k * tan(pi/k)
  bool holds = false;
  bool equality = false;
};

/// Compares the cell area with the area of the regular k-gon sharing its
/// inradius. Cells with clip edges are rejected.
FanCheck fan_lower_bound_check(const ConvexCell& cell, double tolerance = 1e-9);

/// 6 (1 - chi). chi = 0 is only accepted with torus_mode (hexagonal torus).
int max_cell_sides(int chi, bool torus_mode = false);

}  // namespace injrad::voronoi
