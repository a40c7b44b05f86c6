#pragma once

#include <array>
#include <cstdint>

#include "injrad/vec2.hpp"

namespace injrad::flat {

/// x -> Rot(angle) * (reflect ? diag(1,-1) x : x) + translation.
class PlanarIsometry {
 public:
  PlanarIsometry() = default;
  PlanarIsometry(double angle, Vec2 translation, bool reflect);

  static PlanarIsometry rotation(double angle) { return {angle, {}, false}; }
  static PlanarIsometry translation_by(Vec2 t) { return {0.0, t, false}; }
  /// Reflection across the line through the origin at `angle`.
  static PlanarIsometry reflection(double angle) { return {2.0 * angle, {}, true}; }

  double angle() const { return angle_; }
  Vec2 translation() const { return translation_; }
  bool reflects() const { return reflect_; }

  Vec2 apply(Vec2 p) const { return linear(p) + translation_; }
  Vec2 linear(Vec2 p) const;

  /// (*this)(other(x)).
  PlanarIsometry compose(const PlanarIsometry& other) const;
  PlanarIsometry inverse() const;

  /// Snapped (cos, sin, tx, ty, reflect) used to detect duplicate copies.
  std::array<std::int64_t, 5> key(double snap = 1e-9) const;

 private:
  double angle_ = 0.0;  // normalized to (-pi, pi]
  double cos_ = 1.0;
  double sin_ = 0.0;
  Vec2 translation_{};
  bool reflect_ = false;
};

}  // namespace injrad::flat
