#include "injrad/injrad.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "injrad/acceptance.hpp"
#include "injrad/error.hpp"
#include "injrad/report.hpp"

struct injrad_cell {
  injrad::voronoi::ConvexCell cell;
};

struct injrad_surface {
  injrad::flat::ConeSurface surface;
};

struct injrad_group {
  injrad::hyp::FuchsianGroup group;
};

namespace {

using injrad::Errc;
using injrad::Error;
namespace report = injrad::report;

thread_local std::string last_error;

template <class Fn>
injrad_status guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return INJRAD_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<injrad_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return INJRAD_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return INJRAD_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return INJRAD_INTERNAL;
  }
}

template <class T>
T* need(T* p, const char* what) {
  if (!p) throw Error(Errc::invalid_argument, std::string(what) + " must not be NULL");
  return p;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

report::Format fmt(injrad_format f) {
  switch (f) {
    case INJRAD_FORMAT_JSON:
      return report::Format::json;
    case INJRAD_FORMAT_CSV:
      return report::Format::csv;
  }
  throw Error(Errc::invalid_argument, "unknown format");
}

void emit(const report::Json& doc, injrad_format f, char** out) {
  *need(out, "out") = dup(report::render(doc, fmt(f)));
}

injrad::hyp::MobiusMap matrix(const double* abcd) {
  need(abcd, "matrix");
  return injrad::hyp::MobiusMap::checked(abcd[0], abcd[1], abcd[2], abcd[3]);
}

}  // namespace

extern "C" {

const char* injrad_version(void) { return "1.0.0"; }

const char* injrad_last_error(void) { return last_error.c_str(); }

const char* injrad_status_name(injrad_status status) {
  switch (status) {
    case INJRAD_OK:
      return "ok";
    case INJRAD_INVALID_ARGUMENT:
      return "invalid_argument";
    case INJRAD_DOMAIN:
      return "domain";
    case INJRAD_NOT_FOUND:
      return "not_found";
    case INJRAD_BUDGET_EXCEEDED:
      return "budget_exceeded";
    case INJRAD_PARSE:
      return "parse";
    case INJRAD_IO:
      return "io";
    case INJRAD_PRECONDITION:
      return "precondition";
    case INJRAD_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void injrad_string_free(char* s) { std::free(s); }

injrad_status injrad_bavard_bound(int chi, double* out) {
  return guard([&] {
    *need(out, "out") = injrad::bounds::bavard_sup_radius_bound(injrad::bounds::EulerChar(chi));
  });
}

injrad_status injrad_katz_sabourau_bound(int chi, double* out) {
  return guard([&] {
    *need(out, "out") = injrad::bounds::katz_sabourau_ratio_bound(injrad::bounds::EulerChar(chi));
  });
}

injrad_status injrad_polygon_tan_factor(double x, double* out) {
  return guard([&] { *need(out, "out") = injrad::bounds::polygon_tan_factor(x); });
}

injrad_status injrad_collar_product(double l1, double l2, double* out) {
  return guard([&] { *need(out, "out") = injrad::bounds::collar_product(l1, l2); });
}

injrad_status injrad_bounds_report(int has_chi, int chi, int has_area, double area,
                                   injrad_format format, char** out) {
  return guard([&] {
    const auto doc = report::bounds_report(has_chi ? std::optional<int>(chi) : std::nullopt,
                                           has_area ? std::optional<double>(area) : std::nullopt);
    emit(doc, format, out);
  });
}

injrad_status injrad_cell_create(const double* xy, size_t count, double clip_radius,
                                 injrad_cell** out) {
  return guard([&] {
    need(out, "out");
    if (count > 0) need(xy, "xy");
    std::vector<injrad::Vec2> sites;
    for (size_t i = 0; i < count; ++i) sites.push_back({xy[2 * i], xy[2 * i + 1]});
    *out = new injrad_cell{
        injrad::voronoi::dirichlet_cell(injrad::voronoi::SiteSet(std::move(sites)), clip_radius)};
  });
}

injrad_status injrad_cell_from_text(const char* text, double clip_radius, injrad_cell** out) {
  return guard([&] {
    need(out, "out");
    *out = new injrad_cell{injrad::voronoi::dirichlet_cell(
        injrad::voronoi::SiteSet::parse(need(text, "text")), clip_radius)};
  });
}

void injrad_cell_destroy(injrad_cell* cell) { delete cell; }

injrad_status injrad_cell_area(const injrad_cell* cell, double* out) {
  return guard([&] { *need(out, "out") = injrad::voronoi::cell_area(need(cell, "cell")->cell); });
}

injrad_status injrad_cell_inradius(const injrad_cell* cell, double* out) {
  return guard(
      [&] { *need(out, "out") = injrad::voronoi::cell_inradius(need(cell, "cell")->cell); });
}

injrad_status injrad_cell_side_count(const injrad_cell* cell, int* out) {
  return guard([&] { *need(out, "out") = need(cell, "cell")->cell.side_count(); });
}

injrad_status injrad_cell_vertex(const injrad_cell* cell, int index, double* x, double* y) {
  return guard([&] {
    const auto& c = need(cell, "cell")->cell;
    if (index < 0 || index >= c.side_count()) {
      throw Error(Errc::invalid_argument, "vertex index out of range");
    }
    const auto v = c.vertices()[static_cast<size_t>(index)];
    *need(x, "x") = v.x;
    *need(y, "y") = v.y;
  });
}

injrad_status injrad_cell_fan_check(const injrad_cell* cell, double tolerance, double* lhs,
                                    double* rhs, int* holds) {
  return guard([&] {
    const auto fan = injrad::voronoi::fan_lower_bound_check(need(cell, "cell")->cell, tolerance);
    if (lhs) *lhs = fan.lhs;
    if (rhs) *rhs = fan.rhs;
    if (holds) *holds = fan.holds ? 1 : 0;
  });
}

injrad_status injrad_cell_report(const injrad_cell* cell, injrad_format format, char** out) {
  return guard([&] { emit(report::cell_report(need(cell, "cell")->cell), format, out); });
}

injrad_status injrad_max_cell_sides(int chi, int torus_mode, int* out) {
  return guard([&] { *need(out, "out") = injrad::voronoi::max_cell_sides(chi, torus_mode != 0); });
}

injrad_status injrad_surface_create(const int* partner, const int* flipped, int n, double apothem,
                                    injrad_surface** out) {
  return guard([&] {
    need(out, "out");
    need(partner, "partner");
    if (n <= 0) throw Error(Errc::invalid_argument, "n must be positive");
    std::vector<int> p(partner, partner + n);
    std::vector<bool> f;
    if (flipped) {
      for (int i = 0; i < n; ++i) f.push_back(flipped[i] != 0);
    }
    *out = new injrad_surface{
        injrad::flat::ConeSurface(injrad::flat::SidePairing(std::move(p), std::move(f)), apothem)};
  });
}

injrad_status injrad_surface_from_text(const char* text, double apothem, injrad_surface** out) {
  return guard([&] {
    need(out, "out");
    *out = new injrad_surface{injrad::flat::ConeSurface(
        injrad::flat::SidePairing::parse(need(text, "text")), apothem)};
  });
}

injrad_status injrad_surface_search(int n, int orientable, int cycle_length,
                                    injrad_surface** out) {
  return guard([&] {
    need(out, "out");
    auto found = injrad::flat::find_uniform_cycle_pairing(n, orientable != 0, cycle_length);
    if (!found) {
      throw Error(Errc::not_found, "no pairing of the " + std::to_string(n) +
                                       "-gon has all vertex cycles of length " +
                                       std::to_string(cycle_length));
    }
    *out = new injrad_surface{injrad::flat::ConeSurface(std::move(*found))};
  });
}

void injrad_surface_destroy(injrad_surface* surface) { delete surface; }

injrad_status injrad_surface_euler_characteristic(const injrad_surface* surface, int* out) {
  return guard(
      [&] { *need(out, "out") = need(surface, "surface")->surface.euler_characteristic(); });
}

injrad_status injrad_surface_cycle_count(const injrad_surface* surface, int* out) {
  return guard([&] {
    *need(out, "out") = static_cast<int>(need(surface, "surface")->surface.cycles().size());
  });
}

injrad_status injrad_surface_cone_angle(const injrad_surface* surface, int cycle, double* out) {
  return guard([&] {
    const auto& angles = need(surface, "surface")->surface.cone_angles();
    if (cycle < 0 || static_cast<size_t>(cycle) >= angles.size()) {
      throw Error(Errc::invalid_argument, "cycle index out of range");
    }
    *need(out, "out") = angles[static_cast<size_t>(cycle)];
  });
}

injrad_status injrad_surface_pairing_text(const injrad_surface* surface, char** out) {
  return guard(
      [&] { *need(out, "out") = dup(need(surface, "surface")->surface.pairing().to_text()); });
}

injrad_status injrad_surface_center_injectivity_radius(const injrad_surface* surface,
                                                       double* out) {
  return guard([&] {
    *need(out, "out") = injrad::flat::center_injectivity_radius(need(surface, "surface")->surface);
  });
}

injrad_status injrad_surface_analyze(const injrad_surface* surface, double max_length,
                                     size_t max_copies, injrad_format format, char** out) {
  return guard([&] {
    const auto& s = need(surface, "surface")->surface;
    need(out, "out");
    injrad::flat::UnfoldingOptions opt;
    if (max_copies > 0) opt.max_copies = max_copies;
    const double L = max_length > 0.0 ? max_length : 2.5 * s.apothem();
    try {
      const auto loops = injrad::flat::shortest_loops_at_center(s, L, opt);
      auto doc = report::flat_analysis(s, &loops);
      doc["status"] = "ok";
      emit(doc, format, out);
    } catch (const Error& e) {
      if (e.code() != Errc::budget_exceeded) throw;
      auto doc = report::flat_analysis(s, nullptr);
      doc["max_length"] = L;
      doc["status"] = "budget_exceeded";
      doc["message"] = e.what();
      emit(doc, format, out);
      throw;
    }
  });
}

injrad_status injrad_flat_search_report(int n, int orientable, int cycle_length,
                                        injrad_format format, char** out) {
  return guard([&] {
    const auto found = injrad::flat::find_uniform_cycle_pairing(n, orientable != 0, cycle_length);
    emit(report::flat_search_report(n, orientable != 0, cycle_length, found), format, out);
  });
}

injrad_status injrad_group_thrice_punctured(injrad_group** out) {
  return guard([&] {
    *need(out, "out") = new injrad_group{injrad::hyp::FuchsianGroup::thrice_punctured_sphere()};
  });
}

injrad_status injrad_group_create(const char* name, const double* abcd, size_t generator_count,
                                  injrad_group** out) {
  return guard([&] {
    need(out, "out");
    if (generator_count > 0) need(abcd, "abcd");
    std::vector<injrad::hyp::MobiusMap> gens;
    for (size_t i = 0; i < generator_count; ++i) {
      const double* m = abcd + 4 * i;
      gens.emplace_back(m[0], m[1], m[2], m[3]);
    }
    *out = new injrad_group{
        injrad::hyp::FuchsianGroup(name ? name : "custom", std::move(gens))};
  });
}

void injrad_group_destroy(injrad_group* group) { delete group; }

injrad_status injrad_translation_length(const double abcd[4], double* out) {
  return guard([&] { *need(out, "out") = injrad::hyp::translation_length(matrix(abcd)); });
}

injrad_status injrad_translation_length_report(const double abcd[4], injrad_format format,
                                               char** out) {
  return guard([&] { emit(report::translation_length_report(matrix(abcd)), format, out); });
}

injrad_status injrad_pointwise_systole(const injrad_group* group, double x, double y,
                                       int word_length, double* out) {
  return guard([&] {
    *need(out, "out") = injrad::hyp::pointwise_systole(need(group, "group")->group,
                                                       injrad::hyp::make_point(x, y), word_length)
                            .systole;
  });
}

injrad_status injrad_sup_radius(const injrad_group* group, int grid, int refine, int word_length,
                                double* value, double* x, double* y) {
  return guard([&] {
    const auto r =
        injrad::hyp::sup_injectivity_radius(need(group, "group")->group, grid, refine, word_length);
    *need(value, "value") = r.value;
    if (x) *x = r.argmax.x;
    if (y) *y = r.argmax.y;
  });
}

injrad_status injrad_sup_radius_report(const injrad_group* group, int grid, int refine,
                                       int word_length, injrad_format format, char** out) {
  return guard([&] {
    const auto& g = need(group, "group")->group;
    emit(report::sup_radius_report(g, injrad::hyp::sup_injectivity_radius(g, grid, refine,
                                                                          word_length)),
         format, out);
  });
}

injrad_status injrad_ideal_triangle_inradius(double* out) {
  return guard([&] { *need(out, "out") = injrad::hyp::ideal_triangle_inradius(); });
}

injrad_status injrad_intersecting_pair_check(const double a[4], const double b[4],
                                             double* product, int* holds) {
  return guard([&] {
    const auto c = injrad::hyp::intersecting_pair_check(matrix(a), matrix(b));
    if (product) *product = c.product;
    if (holds) *holds = c.holds ? 1 : 0;
  });
}

injrad_status injrad_smooth_report(const char* profile, double t0, double ell,
                                   const char* curvature_class, double epsilon,
                                   injrad_format format, char** out, int* all_pass) {
  return guard([&] {
    namespace w = injrad::warped;
    const w::WarpedMetric wm(w::profile_by_name(need(profile, "profile"), ell), t0, ell,
                             w::parse_class(need(curvature_class, "curvature_class")));
    const auto cert = w::certify(w::smooth_metric(wm, epsilon));
    emit(report::smoothing_report(wm, cert), format, out);
    if (all_pass) *all_pass = cert.all() ? 1 : 0;
  });
}

int injrad_criterion_count(void) { return injrad::acceptance::kCriterionCount; }

injrad_status injrad_run_criterion(int index, uint64_t seed, int* pass) {
  return guard([&] {
    *need(pass, "pass") = injrad::acceptance::run_criterion(index, seed).pass ? 1 : 0;
  });
}

injrad_status injrad_reproduce_all(uint64_t seed, injrad_format format, char** out,
                                   int* all_pass) {
  return guard([&] {
    const auto results = injrad::acceptance::run_all(seed);
    const auto doc = injrad::acceptance::summary(seed, results);
    emit(doc, format, out);
    if (all_pass) *all_pass = doc["all_pass"].get<bool>() ? 1 : 0;
  });
}

}  // extern "C"
