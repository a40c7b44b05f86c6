#include "injrad/flat_cone.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "injrad/error.hpp"

namespace injrad::flat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int mod(int a, int n) { return ((a % n) + n) % n; }

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
  }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      auto& p = parent_[static_cast<std::size_t>(a)];
      p = parent_[static_cast<std::size_t>(p)];
      a = p;
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
  }
  int size_of(int a) { return size_[static_cast<std::size_t>(find(a))]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// Identifies the endpoints of sides s and t: side s runs from corner s-1
// to corner s.
void glue_corners(DisjointSets& sets, int n, int s, int t, bool flip) {
  if (flip) {
    sets.unite(mod(s - 1, n), mod(t - 1, n));
    sets.unite(s, t);
  } else {
    sets.unite(mod(s - 1, n), t);
    sets.unite(s, mod(t - 1, n));
  }
}

std::vector<int> encode(const std::vector<int>& partner, const std::vector<bool>& flip) {
  std::vector<int> code(partner.size());
  for (std::size_t i = 0; i < partner.size(); ++i) code[i] = 2 * partner[i] + (flip[i] ? 1 : 0);
  return code;
}

struct SearchState {
  int n;
  int cycle_length;
  bool orientable;
  std::vector<int> partner;
  std::vector<bool> flip;
};

// Rejects partial pairings with an oversized vertex class, or a class whose
// corners are all glued on both sides but has the wrong size.
bool partial_ok(const SearchState& st) {
  const int n = st.n;
  DisjointSets sets(n);
  for (int s = 0; s < n; ++s) {
    const int t = st.partner[static_cast<std::size_t>(s)];
    if (t > s) glue_corners(sets, n, s, t, st.flip[static_cast<std::size_t>(s)]);
  }
  std::vector<int> open(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) {
    if (sets.size_of(c) > st.cycle_length) return false;
    const bool closed = st.partner[static_cast<std::size_t>(c)] >= 0 &&
                        st.partner[static_cast<std::size_t>(mod(c + 1, n))] >= 0;
    if (!closed) open[static_cast<std::size_t>(sets.find(c))] = 1;
  }
  for (int c = 0; c < n; ++c) {
    const int root = sets.find(c);
    if (root == c && !open[static_cast<std::size_t>(root)] && sets.size_of(c) != st.cycle_length) {
      return false;
    }
  }
  return true;
}

template <class Visit>
bool backtrack(SearchState& st, const Visit& visit) {
  const auto it = std::find(st.partner.begin(), st.partner.end(), -1);
  if (it == st.partner.end()) {
    const bool has_flip = std::find(st.flip.begin(), st.flip.end(), true) != st.flip.end();
    if (has_flip == st.orientable) return false;
    return visit(SidePairing(st.partner, st.flip));
  }
  const int s = static_cast<int>(it - st.partner.begin());
  for (int t = s + 1; t < st.n; ++t) {
    if (st.partner[static_cast<std::size_t>(t)] != -1) continue;
    for (int f = 0; f < (st.orientable ? 1 : 2); ++f) {
      st.partner[static_cast<std::size_t>(s)] = t;
      st.partner[static_cast<std::size_t>(t)] = s;
      st.flip[static_cast<std::size_t>(s)] = st.flip[static_cast<std::size_t>(t)] = (f == 1);
      if (partial_ok(st) && backtrack(st, visit)) return true;
      st.partner[static_cast<std::size_t>(s)] = -1;
      st.partner[static_cast<std::size_t>(t)] = -1;
      st.flip[static_cast<std::size_t>(s)] = st.flip[static_cast<std::size_t>(t)] = false;
    }
  }
  return false;
}

void check_search_arguments(int n, int cycle_length) {
  if (n < 4 || n % 2 != 0) {
    throw Error(Errc::invalid_argument, "pairing search needs an even n >= 4");
  }
  if (cycle_length < 1) {
    throw Error(Errc::invalid_argument, "cycle length must be positive");
  }
}

}  // namespace

// --- SidePairing ----------------------------------------------------------

SidePairing::SidePairing(std::vector<int> partner, std::vector<bool> flipped)
    : partner_(std::move(partner)), flipped_(std::move(flipped)) {
  const int n = static_cast<int>(partner_.size());
  if (n < 4 || n % 2 != 0) {
    throw Error(Errc::invalid_argument, "side pairing needs an even number of sides >= 4");
  }
  if (flipped_.empty()) flipped_.assign(partner_.size(), false);
  if (flipped_.size() != partner_.size()) {
    throw Error(Errc::invalid_argument, "flip flags do not match the number of sides");
  }
  for (int i = 0; i < n; ++i) {
    const int j = partner_[static_cast<std::size_t>(i)];
    if (j < 0 || j >= n || j == i || partner_[static_cast<std::size_t>(j)] != i) {
      throw Error(Errc::invalid_argument,
                  "side pairing is not a fixed-point-free involution at side " + std::to_string(i));
    }
    if (flipped_[static_cast<std::size_t>(i)] != flipped_[static_cast<std::size_t>(j)]) {
      throw Error(Errc::invalid_argument, "flip flag differs between the two sides of a pair");
    }
  }
}

SidePairing SidePairing::opposite(int n) {
  if (n < 4 || n % 2 != 0) {
    throw Error(Errc::invalid_argument, "opposite pairing needs an even n >= 4");
  }
  std::vector<int> partner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) partner[static_cast<std::size_t>(i)] = (i + n / 2) % n;
  return SidePairing(std::move(partner));
}

SidePairing SidePairing::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<int, int>> flips;
  bool saw_pairs = false;
  const std::regex pair_re(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  const auto read_pairs = [&](const std::string& body, std::vector<std::pair<int, int>>& out) {
    std::string rest = body;
    rest.erase(std::remove_if(rest.begin(), rest.end(), ::isspace), rest.end());
    std::string consumed;
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), pair_re);
         it != std::sregex_iterator(); ++it) {
      out.emplace_back(std::stoi((*it)[1]), std::stoi((*it)[2]));
      consumed += it->str();
    }
    if (consumed.size() != rest.size()) {
      throw Error(Errc::parse, "malformed pair list: " + body);
    }
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(std::remove(line.begin(), line.end(), '\r'), line.end());
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::parse, "expected key=value: " + line);
    std::string key = line.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    const std::string value = line.substr(eq + 1);
    if (key == "n") {
      try {
        std::size_t used = 0;
        n = std::stoi(value, &used);
        if (value.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw Error(Errc::parse, "bad side count: " + value);
      }
    } else if (key == "pairs") {
      read_pairs(value, pairs);
      saw_pairs = true;
    } else if (key == "flip") {
      read_pairs(value, flips);
    } else {
      throw Error(Errc::parse, "unknown key: " + key);
    }
  }
  if (n < 0 || !saw_pairs) throw Error(Errc::parse, "pairing file needs n= and pairs= lines");
  if (n < 4 || n % 2 != 0) throw Error(Errc::invalid_argument, "n must be even and >= 4");
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  std::vector<bool> flip(static_cast<std::size_t>(n), false);
  const auto in_range = [n](int a) { return a >= 0 && a < n; };
  for (auto [a, b] : pairs) {
    if (!in_range(a) || !in_range(b)) throw Error(Errc::invalid_argument, "side index out of range");
    if (partner[static_cast<std::size_t>(a)] != -1 || partner[static_cast<std::size_t>(b)] != -1) {
      throw Error(Errc::invalid_argument, "side listed in more than one pair");
    }
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  }
  for (auto [a, b] : flips) {
    if (!in_range(a) || !in_range(b) || partner[static_cast<std::size_t>(a)] != b) {
      throw Error(Errc::invalid_argument, "flip entry is not one of the pairs");
    }
    flip[static_cast<std::size_t>(a)] = flip[static_cast<std::size_t>(b)] = true;
  }
  return SidePairing(std::move(partner), std::move(flip));
}

std::string SidePairing::to_text() const {
  std::ostringstream out;
  out << "n=" << size() << "\npairs=";
  std::string flips;
  for (int i = 0; i < size(); ++i) {
    const int j = partner(i);
    if (j < i) continue;
    out << '(' << i << ',' << j << ')';
    if (flipped(i)) flips += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  out << '\n';
  if (!flips.empty()) out << "flip=" << flips << '\n';
  return out.str();
}

// --- combinatorics --------------------------------------------------------

std::vector<std::vector<int>> vertex_cycles(const SidePairing& pairing) {
  const int n = pairing.size();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<std::vector<int>> cycles;
  for (int c0 = 0; c0 < n; ++c0) {
    if (seen[static_cast<std::size_t>(c0)]) continue;
    std::vector<int> cycle;
    int c = c0;
    int leave = mod(c0 + 1, n);
    for (int step = 0; step <= n; ++step) {
      if (step == n) throw Error(Errc::invalid_argument, "corner walk did not close");
      cycle.push_back(c);
      seen[static_cast<std::size_t>(c)] = true;
      const int t = pairing.partner(leave);
      const bool at_start = leave == mod(c + 1, n);
      const bool flip = pairing.flipped(leave);
      // Unflipped: start(s) ~ end(t) = corner t, end(s) ~ start(t) = corner t-1.
      const int next = (at_start != flip) ? t : mod(t - 1, n);
      leave = (t == next) ? mod(next + 1, n) : next;
      c = next;
      if (c == c0) break;
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int euler_characteristic(const SidePairing& pairing) {
  return static_cast<int>(vertex_cycles(pairing).size()) - pairing.size() / 2 + 1;
}

bool is_orientable(const SidePairing& pairing) {
  // Coherent orientations propagate across unflipped gluings. With a single
  // face, a flipped gluing asks the face to carry both orientations.
  for (int s = 0; s < pairing.size(); ++s) {
    if (pairing.flipped(s)) return false;
  }
  return true;
}

int genus(const SidePairing& pairing) {
  const int chi = euler_characteristic(pairing);
  return is_orientable(pairing) ? (2 - chi) / 2 : 2 - chi;
}

SidePairing canonical_form(const SidePairing& pairing) {
  const int n = pairing.size();
  std::vector<int> best;
  std::vector<int> best_partner;
  std::vector<bool> best_flip;
  for (int reflect = 0; reflect < 2; ++reflect) {
    for (int k = 0; k < n; ++k) {
      const auto sigma = [&](int i) { return mod((reflect ? -i : i) + k, n); };
      std::vector<int> partner(static_cast<std::size_t>(n));
      std::vector<bool> flip(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        partner[static_cast<std::size_t>(sigma(i))] = sigma(pairing.partner(i));
        flip[static_cast<std::size_t>(sigma(i))] = pairing.flipped(i);
      }
      auto code = encode(partner, flip);
      if (best.empty() || code < best) {
        best = std::move(code);
        best_partner = std::move(partner);
        best_flip = std::move(flip);
      }
    }
  }
  return SidePairing(std::move(best_partner), std::move(best_flip));
}

std::optional<SidePairing> find_uniform_cycle_pairing(int n, bool orientable, int cycle_length) {
  check_search_arguments(n, cycle_length);
  if (n % cycle_length != 0) return std::nullopt;
  SearchState st{n, cycle_length, orientable, std::vector<int>(static_cast<std::size_t>(n), -1),
                 std::vector<bool>(static_cast<std::size_t>(n), false)};
  std::optional<SidePairing> found;
  backtrack(st, [&](SidePairing p) {
    found = std::move(p);
    return true;
  });
  return found;
}

std::vector<SidePairing> enumerate_uniform_cycle_pairings(int n, bool orientable,
                                                          int cycle_length, std::size_t limit) {
  check_search_arguments(n, cycle_length);
  std::vector<SidePairing> out;
  if (n % cycle_length != 0 || limit == 0) return out;
  SearchState st{n, cycle_length, orientable, std::vector<int>(static_cast<std::size_t>(n), -1),
                 std::vector<bool>(static_cast<std::size_t>(n), false)};
  backtrack(st, [&](SidePairing p) {
    if (canonical_form(p) == p) out.push_back(std::move(p));
    return out.size() >= limit;
  });
  return out;
}

// --- ConeSurface ----------------------------------------------------------

ConeSurface::ConeSurface(SidePairing pairing, double apothem)
    : pairing_(std::move(pairing)), apothem_(apothem) {
  if (!(apothem_ > 0.0) || !std::isfinite(apothem_)) {
    throw Error(Errc::invalid_argument, "apothem must be positive");
  }
  const int n = pairing_.size();
  cycles_ = vertex_cycles(pairing_);
  corner_cycle_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < cycles_.size(); ++k) {
    cone_angles_.push_back(static_cast<double>(cycles_[k].size()) * interior_angle());
    for (int c : cycles_[k]) corner_cycle_[static_cast<std::size_t>(c)] = static_cast<int>(k);
  }
  chi_ = static_cast<int>(cycles_.size()) - n / 2 + 1;
  orientable_ = is_orientable(pairing_);
  for (int s = 0; s < n; ++s) {
    const int t = pairing_.partner(s);
    const double as = side_normal_angle(s);
    const double theta = as - side_normal_angle(t) + std::numbers::pi;
    const Vec2 shift = unit_vector(as) * (2.0 * apothem_);
    // Unflipped: rotate side t onto the side opposite to s, then translate
    // across s. Flipped: additionally reflect in the line through the
    // center along the normal of s.
    if (pairing_.flipped(s)) {
      gluings_.emplace_back(2.0 * as - theta, shift, true);
    } else {
      gluings_.emplace_back(theta, shift, false);
    }
  }
}

double ConeSurface::circumradius() const {
  return apothem_ / std::cos(std::numbers::pi / sides());
}

double ConeSurface::interior_angle() const {
  return (sides() - 2) * std::numbers::pi / sides();
}

double ConeSurface::area() const {
  return sides() * apothem_ * apothem_ * std::tan(std::numbers::pi / sides());
}

Vec2 ConeSurface::corner(int c) const {
  return unit_vector(side_normal_angle(c) + std::numbers::pi / sides()) * circumradius();
}

double ConeSurface::side_normal_angle(int side) const { return kTwoPi * side / sides(); }

double ConeSurface::min_cone_angle() const {
  return *std::min_element(cone_angles_.begin(), cone_angles_.end());
}

// --- unfolding ------------------------------------------------------------

namespace {

struct Window {
  bool full = true;
  Vec2 lo{};  // unit vectors, counterclockwise from lo to hi
  Vec2 hi{};
};

Vec2 normalized(Vec2 v) { return v * (1.0 / norm(v)); }

std::optional<Window> intersect(const Window& w, Vec2 a, Vec2 b, double tol) {
  Vec2 lo = normalized(a);
  Vec2 hi = normalized(b);
  if (cross(lo, hi) < 0.0) std::swap(lo, hi);
  if (w.full) return Window{false, lo, hi};
  const Vec2 new_lo = cross(w.lo, lo) >= 0.0 ? lo : w.lo;
  const Vec2 new_hi = cross(hi, w.hi) >= 0.0 ? hi : w.hi;
  if (cross(new_lo, new_hi) < -tol) return std::nullopt;
  return Window{false, new_lo, new_hi};
}

bool direction_in(const Window& w, Vec2 d, double tol) {
  if (w.full) return true;
  const double len = norm(d);
  return cross(w.lo, d) >= -tol * len && cross(d, w.hi) >= -tol * len;
}

// True when every direction in w passes within tol of p, so any segment
// continuing through this window meets p.
bool window_pinned(const Window& w, Vec2 p, double tol) {
  if (w.full) return false;
  const double d = norm(p);
  if (d <= tol) return true;
  const double limit = tol / d;
  const auto angle_to = [&](Vec2 u) { return std::abs(std::atan2(cross(p, u), dot(p, u))); };
  return angle_to(w.lo) <= limit && angle_to(w.hi) <= limit;
}

struct CrossedVertex {
  Vec2 point;
  int cycle;
};

struct Node {
  PlanarIsometry to_copy;
  int entry = -1;
  Window window;
  std::vector<int> crossings;
  std::vector<CrossedVertex> vertices;
};

}  // namespace

LoopSearch shortest_loops_at_center(const ConeSurface& surface, double max_length,
                                    const UnfoldingOptions& options) {
  if (!(max_length > 0.0) || !std::isfinite(max_length)) {
    throw Error(Errc::invalid_argument, "max_length must be positive and finite");
  }
  if (surface.min_cone_angle() < kTwoPi - 1e-9) {
    throw Error(Errc::precondition,
                "loop search needs every cone angle >= 2 pi (nonpositively curved surface)");
  }
  const int n = surface.sides();
  const Vec2 origin{};
  LoopSearch result;
  result.max_length = max_length;
  std::map<std::array<std::int64_t, 5>, std::size_t> seen;
  // Zero-width windows along a ray through a regular (2 pi) vertex reach the
  // same placed copy by several routes around that vertex; one suffices.
  std::set<std::pair<std::array<std::int64_t, 5>, std::array<std::int64_t, 2>>> seen_rays;

  std::deque<Node> queue;
  queue.push_back(Node{});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (++result.copies_explored > options.max_copies) {
      throw Error(Errc::budget_exceeded,
                  "unfolding copy cap of " + std::to_string(options.max_copies) +
                      " reached before exhausting length " + std::to_string(max_length));
    }
    for (int s = 0; s < n; ++s) {
      if (s == node.entry) continue;
      const int c_start = mod(s - 1, n);
      const Vec2 a = node.to_copy.apply(surface.corner(c_start));
      const Vec2 b = node.to_copy.apply(surface.corner(s));
      if (segment_distance(origin, a, b) > max_length) continue;
      const auto window = intersect(node.window, a, b, options.window_tolerance);
      if (!window) continue;
      const auto singular = [&](Vec2 p, int corner) {
        return surface.cone_angles()[static_cast<std::size_t>(surface.cycle_of_corner(corner))] >
                   kTwoPi + 1e-9 &&
               window_pinned(*window, p, options.vertex_tolerance);
      };
      if (singular(a, c_start) || singular(b, s)) {
        ++result.discarded_through_cone_points;
        continue;
      }

      Node child;
      child.to_copy = node.to_copy.compose(surface.gluing(s));
      if (!window->full && cross(window->lo, window->hi) <= 1e-9) {
        const std::array<std::int64_t, 2> ray{std::llround(window->lo.x / options.snap),
                                              std::llround(window->lo.y / options.snap)};
        if (!seen_rays.emplace(child.to_copy.key(options.snap), ray).second) continue;
      }
      child.entry = surface.pairing().partner(s);
      child.window = *window;
      child.crossings = node.crossings;
      child.crossings.push_back(s);
      child.vertices = node.vertices;
      child.vertices.push_back({a, surface.cycle_of_corner(c_start)});
      child.vertices.push_back({b, surface.cycle_of_corner(s)});

      const Vec2 center = child.to_copy.translation();
      const double length = norm(center);
      if (length <= max_length * (1.0 + 1e-12) &&
          direction_in(child.window, center, options.window_tolerance)) {
        const bool through_cone_point =
            std::any_of(child.vertices.begin(), child.vertices.end(), [&](const CrossedVertex& v) {
              return surface.cone_angles()[static_cast<std::size_t>(v.cycle)] > kTwoPi + 1e-9 &&
                     segment_distance(v.point, origin, center) <= options.vertex_tolerance;
            });
        if (through_cone_point) {
          ++result.discarded_through_cone_points;
        } else if (seen.emplace(child.to_copy.key(options.snap), result.loops.size()).second) {
          result.loops.push_back(LoopRecord{length, child.crossings, child.to_copy});
        }
      }
      queue.push_back(std::move(child));
    }
  }
  std::stable_sort(result.loops.begin(), result.loops.end(),
                   [](const LoopRecord& x, const LoopRecord& y) {
                     if (x.length != y.length) return x.length < y.length;
                     return x.crossings < y.crossings;
                   });
  return result;
}

double center_injectivity_radius(const ConeSurface& surface, const UnfoldingOptions& options) {
  // Crossing any side perpendicularly gives a loop of length exactly twice
  // the apothem, so this radius always contains the shortest loop.
  const auto search = shortest_loops_at_center(surface, 2.5 * surface.apothem(), options);
  if (search.loops.empty()) {
    throw Error(Errc::not_found, "no geodesic loop found at the center");
  }
  return search.loops.front().length / 2.0;
}

bounds::BoundReport ratio_report(const ConeSurface& surface, double tolerance,
                                 const UnfoldingOptions& options) {
  const int chi = surface.euler_characteristic();
  double closed_form = 0.0;
  if (chi <= -1) {
    closed_form = bounds::katz_sabourau_ratio_bound(bounds::EulerChar(chi));
  } else if (chi == 0) {
    closed_form = 1.0 / bounds::polygon_tan_factor(surface.sides());
  } else {
    throw Error(Errc::precondition, "ratio report needs chi <= 0");
  }
  const double r = center_injectivity_radius(surface, options);
  return bounds::BoundReport::make("center_radius_squared_over_area", closed_form,
                                   r * r / surface.area(), tolerance);
}

}  // namespace injrad::flat
