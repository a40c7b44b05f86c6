#include "injrad/planar_isometry.hpp"

#include <cmath>
#include <numbers>

namespace injrad::flat {
namespace {

double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

PlanarIsometry::PlanarIsometry(double angle, Vec2 translation, bool reflect)
    : angle_(normalize_angle(angle)),
      cos_(std::cos(angle_)),
      sin_(std::sin(angle_)),
      translation_(translation),
      reflect_(reflect) {}

Vec2 PlanarIsometry::linear(Vec2 p) const {
  if (reflect_) p.y = -p.y;
  return {cos_ * p.x - sin_ * p.y, sin_ * p.x + cos_ * p.y};
}

PlanarIsometry PlanarIsometry::compose(const PlanarIsometry& other) const {
  // R_a S_a R_b S_b = R_(a +- b) S_(a xor b), since S R_b = R_(-b) S.
  const double angle = reflect_ ? angle_ - other.angle_ : angle_ + other.angle_;
  return {angle, apply(other.translation_), reflect_ != other.reflect_};
}

PlanarIsometry PlanarIsometry::inverse() const {
  // Linear part L = R_a S^f; L^-1 = S^f R_-a, which is R_-a (f = 0) or
  // R_a S (f = 1).
  const double angle = reflect_ ? angle_ : -angle_;
  PlanarIsometry inv(angle, {}, reflect_);
  const Vec2 t = inv.linear(translation_);
  inv.translation_ = -t;
  return inv;
}

std::array<std::int64_t, 5> PlanarIsometry::key(double snap) const {
  const auto q = [snap](double v) { return static_cast<std::int64_t>(std::llround(v / snap)); };
  return {q(cos_), q(sin_), q(translation_.x), q(translation_.y), reflect_ ? 1 : 0};
}

}  // namespace injrad::flat
