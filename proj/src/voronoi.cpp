#include "injrad/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "injrad/error.hpp"

namespace injrad::voronoi {
namespace {

struct Labeled {
  Vec2 point;
  int plane;  // label of the edge leaving `point`
};

// Sutherland-Hodgman step on a convex polygon, keeping edge labels.
std::vector<Labeled> clip_polygon(const std::vector<Labeled>& poly, const HalfPlane& h,
                                  int label, double tol) {
  std::vector<Labeled> out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Labeled& a = poly[i];
    const Labeled& b = poly[(i + 1) % n];
    const double sa = dot(h.normal, a.point) - h.offset;
    const double sb = dot(h.normal, b.point) - h.offset;
    const bool ina = sa <= tol;
    const bool inb = sb <= tol;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double s = sa / (sa - sb);
      const Vec2 x = a.point + (b.point - a.point) * s;
      // Leaving: the new edge runs along h. Entering: remainder of edge a.
      out.push_back({x, ina ? label : a.plane});
    }
  }
  return out;
}

std::vector<Labeled> drop_degenerate(std::vector<Labeled> poly, double tol) {
  bool changed = true;
  while (changed && poly.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const std::size_t j = (i + 1) % poly.size();
      if (norm(poly[i].point - poly[j].point) <= tol) {
        // Edge i is degenerate: keep the label of the edge leaving j.
        poly[i].plane = poly[j].plane;
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return poly;
}

}  // namespace

SiteSet::SiteSet(std::vector<Vec2> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) {
    throw Error(Errc::invalid_argument, "site set is empty");
  }
  for (const Vec2& p : sites_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(Errc::invalid_argument, "site set contains a non-finite point");
    }
    if (norm(p) == 0.0) {
      throw Error(Errc::invalid_argument, "site set contains the origin");
    }
  }
}

SiteSet SiteSet::parse(std::string_view text) {
  std::vector<Vec2> sites;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    double x = 0.0, y = 0.0;
    std::string extra;
    if (!(fields >> x >> y) || (fields >> extra)) {
      throw Error(Errc::parse, "site file line " + std::to_string(lineno) +
                                   ": expected `x y`");
    }
    sites.push_back({x, y});
  }
  return SiteSet(std::move(sites));
}

ConvexCell::ConvexCell(std::vector<Vec2> vertices, std::vector<int> edge_planes,
                       std::vector<HalfPlane> halfplanes)
    : vertices_(std::move(vertices)),
      edge_planes_(std::move(edge_planes)),
      halfplanes_(std::move(halfplanes)) {}

bool ConvexCell::has_clip_edges() const {
  return std::any_of(edge_planes_.begin(), edge_planes_.end(),
                     [&](int e) { return halfplanes_[static_cast<std::size_t>(e)].clip; });
}

ConvexCell dirichlet_cell(const SiteSet& sites, double clip_radius, double epsilon) {
  if (!(clip_radius > 0.0) || !std::isfinite(clip_radius)) {
    throw Error(Errc::invalid_argument, "clip radius must be positive");
  }
  const double scale = std::max(1.0, clip_radius);
  const double tol = epsilon * scale;

  std::vector<HalfPlane> planes;
  const Vec2 axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const Vec2& a : axes) planes.push_back({a, clip_radius, true, -1});

  const auto sites_span = sites.sites();
  for (std::size_t i = 0; i < sites_span.size(); ++i) {
    const Vec2 p = sites_span[i];
    const double len = norm(p);
    if (len <= tol) {
      throw Error(Errc::invalid_argument, "degenerate site at the origin");
    }
    HalfPlane h{p * (1.0 / len), len / 2.0, false, static_cast<int>(i)};
    const bool duplicate = std::any_of(planes.begin(), planes.end(), [&](const HalfPlane& q) {
      return !q.clip && norm(q.normal - h.normal) <= epsilon &&
             std::abs(q.offset - h.offset) <= tol;
    });
    if (!duplicate) planes.push_back(h);
  }

  // Clip square, counterclockwise from (r, -r); edge labels 0..3 follow
  // the axes order above.
  const double r = clip_radius;
  std::vector<Labeled> poly = {
      {{r, -r}, 0}, {{r, r}, 1}, {{-r, r}, 2}, {{-r, -r}, 3}};
  for (std::size_t i = 4; i < planes.size(); ++i) {
    poly = clip_polygon(poly, planes[i], static_cast<int>(i), tol);
    poly = drop_degenerate(std::move(poly), tol);
  }

  // Keep only supporting half-planes, renumbered in first-use order.
  std::vector<int> remap(planes.size(), -1);
  std::vector<HalfPlane> active;
  std::vector<Vec2> vertices;
  std::vector<int> edges;
  for (const Labeled& v : poly) {
    auto& slot = remap[static_cast<std::size_t>(v.plane)];
    if (slot < 0) {
      slot = static_cast<int>(active.size());
      active.push_back(planes[static_cast<std::size_t>(v.plane)]);
    }
    vertices.push_back(v.point);
    edges.push_back(slot);
  }
  return ConvexCell(std::move(vertices), std::move(edges), std::move(active));
}

double cell_area(const ConvexCell& cell) {
  const auto v = cell.vertices();
  if (v.size() < 3) {
    throw Error(Errc::invalid_argument, "cell has fewer than three vertices");
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
  return twice / 2.0;
}

double cell_inradius(const ConvexCell& cell) {
  if (cell.side_count() < 3) {
    throw Error(Errc::invalid_argument, "cell has fewer than three vertices");
  }
  double r = INFINITY;
  for (std::size_t e = 0; e < static_cast<std::size_t>(cell.side_count()); ++e) {
    r = std::min(r, cell.halfplanes()[static_cast<std::size_t>(cell.edge_plane(e))].offset);
  }
  if (!(r > 0.0)) {
    throw Error(Errc::precondition, "origin is not strictly inside the cell");
  }
  return r;
}

FanCheck fan_lower_bound_check(const ConvexCell& cell, double tolerance) {
  if (cell.has_clip_edges()) {
    throw Error(Errc::precondition,
                "fan bound applies to bounded cells; this cell has clip-square edges");
  }
  FanCheck out;
  const int k = cell.side_count();
  const double r = cell_inradius(cell);
  out.lhs = cell_area(cell);
  out.rhs = r * r * k * std::tan(std::numbers::pi / k);
  const double tol = tolerance * std::max(1.0, out.lhs);
  out.holds = out.lhs >= out.rhs - tol;
  out.equality = std::abs(out.lhs - out.rhs) <= tol;
  return out;
}

int max_cell_sides(int chi, bool torus_mode) {
  if (chi <= -1) return 6 * (1 - chi);
  if (chi == 0 && torus_mode) return 6;
  throw Error(Errc::domain, "max_cell_sides: requires chi <= -1 (or chi = 0 in torus mode)");
}

}  // namespace injrad::voronoi
