#pragma once

// Flat cone surfaces obtained from a regular n-gon by gluing its sides in
// pairs: combinatorics (vertex cycles, cone angles, Euler characteristic,
// orientability), a search for pairings whose vertex cycles all have a
// prescribed length, and geodesic loops at the polygon center found by
// unfolding copies of the polygon across glued sides.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "injrad/bounds.hpp"
#include "injrad/planar_isometry.hpp"
#include "injrad/vec2.hpp"

namespace injrad::flat {

/// Fixed-point-free involution on the sides 0..n-1 of a polygon, with a
/// per-pair flag. Unflipped pairs glue side i to side j reversing the
/// boundary direction (start of i to end of j), which is the
/// orientation-compatible gluing; flipped pairs glue start to start.
class SidePairing {
 public:
  SidePairing(std::vector<int> partner, std::vector<bool> flipped = {});

  /// Text format:
  ///   n=<int>
  ///   pairs=(a,b)(c,d)...
  ///   flip=(a,b)...        (optional)
  static SidePairing parse(std::string_view text);
  std::string to_text() const;

  /// Opposite sides glued without flips: tori for n = 4, 6, genus n/4 for n = 0 mod 4.
  static SidePairing opposite(int n);

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int side) const { return partner_[static_cast<std::size_t>(side)]; }
  bool flipped(int side) const { return flipped_[static_cast<std::size_t>(side)]; }
  const std::vector<int>& partners() const { return partner_; }

  bool operator==(const SidePairing&) const = default;

 private:
  std::vector<int> partner_;
  std::vector<bool> flipped_;
};

/// Corner c sits between side c (which ends there) and side c+1 (which
/// starts there). Each cycle lists corners in the order met when walking
/// around the glued vertex; cycles are sorted by their smallest corner,
/// and each cycle starts at its smallest corner.
std::vector<std::vector<int>> vertex_cycles(const SidePairing& pairing);

/// #cycles - n/2 + 1.
int euler_characteristic(const SidePairing& pairing);

/// Propagates a coherent orientation across every gluing.
bool is_orientable(const SidePairing& pairing);

/// g with chi = 2 - 2g (orientable) or chi = 2 - g (non-orientable).
int genus(const SidePairing& pairing);

/// First pairing (canonical order: smallest unpaired side first, partners
/// ascending) whose vertex cycles all have `cycle_length` corners and whose
/// orientability matches the request. nullopt when none exists.
std::optional<SidePairing> find_uniform_cycle_pairing(int n, bool orientable,
                                                      int cycle_length = 3);

inline std::optional<SidePairing> find_triple_cycle_pairing(int n, bool orientable) {
  return find_uniform_cycle_pairing(n, orientable, 3);
}

/// All such pairings up to rotation and reflection of the polygon (one
/// lexicographically minimal representative each), at most `limit`.
std::vector<SidePairing> enumerate_uniform_cycle_pairings(int n, bool orientable,
                                                          int cycle_length,
                                                          std::size_t limit);

/// Lexicographically minimal image under the dihedral symmetries.
SidePairing canonical_form(const SidePairing& pairing);

class ConeSurface {
 public:
  explicit ConeSurface(SidePairing pairing, double apothem = 1.0);

  const SidePairing& pairing() const { return pairing_; }
  int sides() const { return pairing_.size(); }
  double apothem() const { return apothem_; }
  double circumradius() const;
  double interior_angle() const;  // (n-2) pi / n
  const std::vector<std::vector<int>>& cycles() const { return cycles_; }
  const std::vector<double>& cone_angles() const { return cone_angles_; }
  int cycle_of_corner(int corner) const { return corner_cycle_[static_cast<std::size_t>(corner)]; }
  int euler_characteristic() const { return chi_; }
  bool orientable() const { return orientable_; }
  double area() const;  // n r^2 tan(pi/n)

  /// Corner c of the base polygon (centered at the origin).
  Vec2 corner(int c) const;
  /// Outward unit normal direction of side s is at angle 2 pi s / n.
  double side_normal_angle(int side) const;
  /// Maps the base polygon onto its neighbor across `side`.
  const PlanarIsometry& gluing(int side) const { return gluings_[static_cast<std::size_t>(side)]; }

  double min_cone_angle() const;

 private:
  SidePairing pairing_;
  double apothem_;
  std::vector<std::vector<int>> cycles_;
  std::vector<double> cone_angles_;
  std::vector<int> corner_cycle_;
  std::vector<PlanarIsometry> gluings_;
  int chi_;
  bool orientable_;
};

struct LoopRecord {
  double length = 0.0;
  std::vector<int> crossings;  // base-polygon side labels, in order
  PlanarIsometry witness;      // developed copy whose center ends the loop
};

struct UnfoldingOptions {
  std::size_t max_copies = 200000;
  double vertex_tolerance = 1e-9;  // segments this close to a cone point > 2 pi are dropped
  double window_tolerance = 1e-12;
  double snap = 1e-9;
};

struct LoopSearch {
  std::vector<LoopRecord> loops;  // sorted by length
  std::size_t copies_explored = 0;
  std::size_t discarded_through_cone_points = 0;  // loops and pinned branches
  double max_length = 0.0;
};

/// Straight segments from the center of the base copy to developed images
/// of the center, of length <= max_length. Requires every cone angle to be
/// at least 2 pi. Throws Errc::budget_exceeded when the copy cap is hit.
LoopSearch shortest_loops_at_center(const ConeSurface& surface, double max_length,
                                    const UnfoldingOptions& options = {});

/// Half the shortest loop length at the center.
double center_injectivity_radius(const ConeSurface& surface,
                                 const UnfoldingOptions& options = {});

/// center_injectivity_radius^2 / area against the fan bound for the
/// surface's Euler characteristic (1/(n tan(pi/n)) when chi = 0).
bounds::BoundReport ratio_report(const ConeSurface& surface, double tolerance = 1e-6,
                                 const UnfoldingOptions& options = {});

}  // namespace injrad::flat
