#include "injrad/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <set>

#include "injrad/error.hpp"

namespace injrad::hyp {
namespace {

using cplx = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// sinh^2(d/2) for d = d(z, m z); monotone in the displacement.
inline double half_sinh_sq(double a, double b, double c, double d, double x, double y) {
  // c z^2 + (d - a) z - b with z = x + iy.
  const double re = c * (x * x - y * y) + (d - a) * x - b;
  const double im = 2.0 * c * x * y + (d - a) * y;
  return (re * re + im * im) / (4.0 * y * y);
}

std::array<std::int64_t, 4> matrix_key(const MobiusMap& m) {
  std::array<double, 4> e{m.a(), m.b(), m.c(), m.d()};
  double scale = 1.0;
  for (double v : e) scale = std::max(scale, std::abs(v));
  const double tiny = 1e-10 * scale;
  // PSL(2,R): fix the sign by the first entry that is clearly nonzero.
  for (double v : e) {
    if (std::abs(v) > tiny) {
      if (v < 0) {
        for (double& w : e) w = -w;
      }
      break;
    }
  }
  std::array<std::int64_t, 4> key{};
  for (std::size_t i = 0; i < 4; ++i) key[i] = std::llround(e[i] / tiny);
  return key;
}

double circle_angle(double x) { return std::isinf(x) ? M_PI : 2.0 * std::atan(x); }

}  // namespace

HPoint make_point(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0)) {
    throw Error(Errc::domain, "upper half-plane points need finite x and y > 0");
  }
  return {x, y};
}

MobiusMap::MobiusMap(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw Error(Errc::domain, "Moebius map needs a positive determinant");
  }
  const double s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MobiusMap MobiusMap::checked(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-9) {
    throw Error(Errc::domain, "matrix is not normalized (ad - bc = " + std::to_string(det) + ")");
  }
  return from_unit(a, b, c, d);
}

MobiusMap MobiusMap::from_unit(double a, double b, double c, double d) {
  MobiusMap m;
  m.a_ = a;
  m.b_ = b;
  m.c_ = c;
  m.d_ = d;
  return m;
}

HPoint MobiusMap::apply(HPoint z) const {
  const cplx w{z.x, z.y};
  const cplx r = (a_ * w + b_) / (c_ * w + d_);
  return {r.real(), r.imag()};
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
  return from_unit(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                   c_ * o.b_ + d_ * o.d_);
}

bool MobiusMap::is_identity(double tol) const {
  const auto near = [tol](double v, double t) { return std::abs(v - t) <= tol; };
  return near(b_, 0) && near(c_, 0) &&
         ((near(a_, 1) && near(d_, 1)) || (near(a_, -1) && near(d_, -1)));
}

double hyp_distance(HPoint p, HPoint q) {
  if (!(p.y > 0.0) || !(q.y > 0.0)) {
    throw Error(Errc::domain, "hyp_distance: points must have y > 0");
  }
  const double chord = std::hypot(p.x - q.x, p.y - q.y);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y * q.y)));
}

double displacement(const MobiusMap& m, HPoint z) {
  return 2.0 * std::asinh(std::sqrt(half_sinh_sq(m.a(), m.b(), m.c(), m.d(), z.x, z.y)));
}

double translation_length(const MobiusMap& m) {
  const double t = std::abs(m.trace());
  return t > 2.0 ? 2.0 * std::acosh(t / 2.0) : 0.0;
}

double distance_to_geodesic(HPoint p, double u, double v) {
  if (!(p.y > 0.0)) throw Error(Errc::domain, "distance_to_geodesic: y must be positive");
  if (std::isinf(u) && std::isinf(v)) {
    throw Error(Errc::invalid_argument, "geodesic needs at least one finite endpoint");
  }
  if (std::isinf(u)) std::swap(u, v);
  if (std::isinf(v)) return std::asinh(std::abs(p.x - u) / p.y);
  if (u == v) throw Error(Errc::invalid_argument, "geodesic endpoints coincide");
  // (z - u)/(z - v) sends the geodesic to the imaginary axis (possibly
  // composed with complex conjugation, which is also an isometry).
  const cplx z{p.x, p.y};
  const cplx w = (z - u) / (z - v);
  return std::asinh(std::abs(w.real()) / std::abs(w.imag()));
}

std::pair<double, double> axis_endpoints(const MobiusMap& m) {
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(d)});
  if (std::abs(c) <= 1e-14 * scale) {
    if (std::abs(d - a) <= 1e-14 * scale) {
      throw Error(Errc::precondition, "map fixes infinity with a single fixed point");
    }
    return {b / (d - a), kInf};
  }
  const double disc = m.trace() * m.trace() - 4.0;
  if (disc < 0.0) throw Error(Errc::precondition, "elliptic map has no real fixed points");
  const double root = std::sqrt(disc);
  double z1 = (a - d - root) / (2.0 * c);
  double z2 = (a - d + root) / (2.0 * c);
  if (z1 > z2) std::swap(z1, z2);
  return {z1, z2};
}

// --- groups -----------------------------------------------------------------

FuchsianGroup::FuchsianGroup(std::string name, std::vector<MobiusMap> generators, SearchBox box)
    : name_(std::move(name)), generators_(std::move(generators)), box_(box) {
  if (generators_.empty()) {
    throw Error(Errc::invalid_argument, "group '" + name_ + "' has no generators");
  }
  for (const MobiusMap& g : generators_) {
    if (g.is_identity()) {
      throw Error(Errc::invalid_argument, "group '" + name_ + "' has a trivial generator");
    }
  }
  if (generators_.size() > 26) {
    throw Error(Errc::invalid_argument, "at most 26 generators are supported");
  }
  if (!(box_.xmin < box_.xmax) || !(0.0 < box_.ymin && box_.ymin < box_.ymax)) {
    throw Error(Errc::invalid_argument, "search box must satisfy xmin < xmax, 0 < ymin < ymax");
  }
}

FuchsianGroup FuchsianGroup::thrice_punctured_sphere() {
  return FuchsianGroup("thrice-punctured",
                       {MobiusMap(1, 2, 0, 1), MobiusMap(1, 0, 2, 1)});
}

FuchsianGroup FuchsianGroup::conjugated(const MobiusMap& g) const {
  std::vector<MobiusMap> gens;
  const MobiusMap inv = g.inverse();
  for (const MobiusMap& h : generators_) gens.push_back(g * h * inv);
  return FuchsianGroup(name_ + "^g", std::move(gens), box_);
}

std::vector<GroupElement> enumerate_words(const FuchsianGroup& group, int max_length) {
  if (max_length < 1) throw Error(Errc::invalid_argument, "word length must be >= 1");
  const auto& gens = group.generators();
  const int letters = 2 * static_cast<int>(gens.size());
  std::vector<MobiusMap> letter_map;
  std::string letter_char;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letter_map.push_back(gens[i]);
    letter_map.push_back(gens[i].inverse());
    letter_char.push_back(static_cast<char>('a' + i));
    letter_char.push_back(static_cast<char>('A' + i));
  }

  struct Partial {
    MobiusMap map;
    std::string word;
    int last;
  };
  std::vector<GroupElement> out;
  std::set<std::array<std::int64_t, 4>> seen;
  std::vector<Partial> frontier{{MobiusMap{}, "", -1}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Partial> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(letters));
    for (const Partial& p : frontier) {
      for (int l = 0; l < letters; ++l) {
        if (p.last >= 0 && (l ^ 1) == p.last) continue;  // would cancel
        Partial q{p.map * letter_map[static_cast<std::size_t>(l)],
                  p.word + letter_char[static_cast<std::size_t>(l)], l};
        if (!q.map.is_identity() && seen.insert(matrix_key(q.map)).second) {
          out.push_back({q.map, q.word});
        }
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  if (out.empty()) throw Error(Errc::invalid_argument, "group has no nontrivial elements");
  return out;
}

SystoleLandscape pointwise_systole(const FuchsianGroup& group, HPoint p, int word_length) {
  p = make_point(p.x, p.y);
  const auto elements = enumerate_words(group, word_length);
  double best = INFINITY;
  const GroupElement* arg = nullptr;
  for (const auto& e : elements) {
    const double q = half_sinh_sq(e.map.a(), e.map.b(), e.map.c(), e.map.d(), p.x, p.y);
    if (q < best) {
      best = q;
      arg = &e;
    }
  }
  return SystoleLandscape{p, 2.0 * std::asinh(std::sqrt(best)), word_length, arg->word};
}

SupRadiusResult sup_injectivity_radius(const FuchsianGroup& group, int grid, int refine_steps,
                                       int word_length) {
  if (grid < 2) throw Error(Errc::invalid_argument, "grid must have at least 2 points per axis");
  if (refine_steps < 0) throw Error(Errc::invalid_argument, "refine steps must be >= 0");
  const auto elements = enumerate_words(group, word_length);
  const std::size_t m = elements.size();
  std::vector<double> ea(m), eb(m), ec(m), ed(m);
  for (std::size_t i = 0; i < m; ++i) {
    ea[i] = elements[i].map.a();
    eb[i] = elements[i].map.b();
    ec[i] = elements[i].map.c();
    ed[i] = elements[i].map.d();
  }
  const auto min_q = [&](double x, double y, std::size_t* arg) {
    double best = INFINITY;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double q = half_sinh_sq(ea[i], eb[i], ec[i], ed[i], x, y);
      if (q < best) {
        best = q;
        best_i = i;
      }
    }
    if (arg) *arg = best_i;
    return best;
  };

  const SearchBox& box = group.box();
  const double hx = (box.xmax - box.xmin) / (grid - 1);
  const double hy = (box.ymax - box.ymin) / (grid - 1);
  double best = -1.0;
  int bi = 0, bj = 0;
  for (int j = 0; j < grid; ++j) {
    const double y = box.ymin + hy * j;
    for (int i = 0; i < grid; ++i) {
      const double q = min_q(box.xmin + hx * i, y, nullptr);
      if (q > best) {
        best = q;
        bi = i;
        bj = j;
      }
    }
  }

  // Compass search over the 8 neighbor directions with a halving step.
  double x = box.xmin + hx * bi;
  double y = box.ymin + hy * bj;
  double sx = hx, sy = hy;
  for (int step = 0; step < refine_steps; ++step) {
    for (int moves = 0; moves < 64; ++moves) {
      double cand_best = best, cx = x, cy = y;
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          const double nx = std::clamp(x + dx * sx, box.xmin, box.xmax);
          const double ny = std::clamp(y + dy * sy, box.ymin, box.ymax);
          const double q = min_q(nx, ny, nullptr);
          if (q > cand_best) {
            cand_best = q;
            cx = nx;
            cy = ny;
          }
        }
      }
      if (cand_best <= best) break;
      best = cand_best;
      x = cx;
      y = cy;
    }
    sx /= 2.0;
    sy /= 2.0;
  }

  std::size_t arg = 0;
  best = min_q(x, y, &arg);
  SupRadiusResult r;
  r.value = std::asinh(std::sqrt(best));
  r.argmax = {x, y};
  r.argmin_word = elements[arg].word;
  r.grid = grid;
  r.refine_steps = refine_steps;
  r.word_length = word_length;
  r.word_cap_hit = static_cast<int>(r.argmin_word.size()) >= word_length;
  r.boundary_limited = x - box.xmin < hx || box.xmax - x < hx || y - box.ymin < hy ||
                       box.ymax - y < hy;
  return r;
}

double ideal_triangle_inradius() {
  // Distance to the nearest side along the symmetry axis x = 0 is unimodal:
  // it grows with y toward the semicircle side and shrinks toward the
  // vertical sides.
  const auto nearest_side = [](double y) {
    const HPoint p{0.0, y};
    return std::min({distance_to_geodesic(p, -1.0, kInf), distance_to_geodesic(p, 1.0, kInf),
                     distance_to_geodesic(p, -1.0, 1.0)});
  };
  double lo = 1.0, hi = 10.0;
  for (int it = 0; it < 300 && hi - lo > 1e-15; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (nearest_side(m1) < nearest_side(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return nearest_side((lo + hi) / 2.0);
}

PairCheck intersecting_pair_check(const MobiusMap& a, const MobiusMap& b, double tolerance) {
  if (std::abs(a.trace()) <= 2.0 + 1e-12 || std::abs(b.trace()) <= 2.0 + 1e-12) {
    throw Error(Errc::precondition, "intersecting pair check needs two hyperbolic maps");
  }
  const auto [a1, a2] = axis_endpoints(a);
  const auto [b1, b2] = axis_endpoints(b);
  double ta1 = circle_angle(a1), ta2 = circle_angle(a2);
  if (ta1 > ta2) std::swap(ta1, ta2);
  const double eps = 1e-12;
  const auto inside = [&](double x) {
    const double t = circle_angle(x);
    if (std::abs(t - ta1) <= eps || std::abs(t - ta2) <= eps) {
      throw Error(Errc::precondition, "axes share an endpoint and do not cross");
    }
    return t > ta1 && t < ta2;
  };
  if (inside(b1) == inside(b2)) {
    throw Error(Errc::precondition, "axes do not cross (endpoints of B do not separate A)");
  }
  PairCheck out;
  out.length_a = translation_length(a);
  out.length_b = translation_length(b);
  out.product = std::sinh(out.length_a / 2.0) * std::sinh(out.length_b / 2.0);
  out.holds = out.product >= 1.0 - tolerance;
  return out;
}

}  // namespace injrad::hyp
