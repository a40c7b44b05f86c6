/* C interface to the injrad library.
 *
 * Every function returns an injrad_status; results come back through out
 * parameters. On failure the thread-local message from injrad_last_error()
 * describes what went wrong. Strings returned through char** are owned by
 * the caller and released with injrad_string_free. Handles are opaque and
 * released with their _destroy function (NULL is accepted). */
#ifndef INJRAD_INJRAD_H
#define INJRAD_INJRAD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define INJRAD_API __declspec(dllexport)
#else
#define INJRAD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum injrad_status {
  INJRAD_OK = 0,
  INJRAD_INVALID_ARGUMENT = 1,
  INJRAD_DOMAIN = 2,
  INJRAD_NOT_FOUND = 3,
  INJRAD_BUDGET_EXCEEDED = 4,
  INJRAD_PARSE = 5,
  INJRAD_IO = 6,
  INJRAD_PRECONDITION = 7,
  INJRAD_INTERNAL = 99
} injrad_status;

typedef enum injrad_format { INJRAD_FORMAT_JSON = 0, INJRAD_FORMAT_CSV = 1 } injrad_format;

typedef struct injrad_cell injrad_cell;
typedef struct injrad_surface injrad_surface;
typedef struct injrad_group injrad_group;

INJRAD_API const char* injrad_version(void);
INJRAD_API const char* injrad_last_error(void);
INJRAD_API const char* injrad_status_name(injrad_status status);
INJRAD_API void injrad_string_free(char* s);

/* Bounds. chi must be <= -1 for the Bavard and Katz-Sabourau evaluators. */
INJRAD_API injrad_status injrad_bavard_bound(int chi, double* out);
INJRAD_API injrad_status injrad_katz_sabourau_bound(int chi, double* out);
INJRAD_API injrad_status injrad_polygon_tan_factor(double x, double* out);
INJRAD_API injrad_status injrad_collar_product(double l1, double l2, double* out);
/* Constant table plus chi rows (if has_chi) and the area row (if has_area). */
INJRAD_API injrad_status injrad_bounds_report(int has_chi, int chi, int has_area, double area,
                                              injrad_format format, char** out);

/* Dirichlet cell of the origin. xy holds count (x, y) pairs. */
INJRAD_API injrad_status injrad_cell_create(const double* xy, size_t count, double clip_radius,
                                            injrad_cell** out);
/* One "x y" pair per line, '#' comments. */
INJRAD_API injrad_status injrad_cell_from_text(const char* text, double clip_radius,
                                               injrad_cell** out);
INJRAD_API void injrad_cell_destroy(injrad_cell* cell);
INJRAD_API injrad_status injrad_cell_area(const injrad_cell* cell, double* out);
INJRAD_API injrad_status injrad_cell_inradius(const injrad_cell* cell, double* out);
INJRAD_API injrad_status injrad_cell_side_count(const injrad_cell* cell, int* out);
INJRAD_API injrad_status injrad_cell_vertex(const injrad_cell* cell, int index, double* x,
                                            double* y);
/* Area against inradius^2 k tan(pi/k); INJRAD_PRECONDITION for clipped cells. */
INJRAD_API injrad_status injrad_cell_fan_check(const injrad_cell* cell, double tolerance,
                                               double* lhs, double* rhs, int* holds);
INJRAD_API injrad_status injrad_cell_report(const injrad_cell* cell, injrad_format format,
                                            char** out);
INJRAD_API injrad_status injrad_max_cell_sides(int chi, int torus_mode, int* out);

/* Flat cone surfaces from a regular n-gon. partner[i] is the side glued to
 * side i; flipped may be NULL (no orientation-reversing pairs). */
INJRAD_API injrad_status injrad_surface_create(const int* partner, const int* flipped, int n,
                                               double apothem, injrad_surface** out);
/* Pairing text: "n=<int>", "pairs=(a,b)...", optional "flip=(a,b)...". */
INJRAD_API injrad_status injrad_surface_from_text(const char* text, double apothem,
                                                  injrad_surface** out);
/* First pairing whose vertex cycles all have cycle_length corners;
 * INJRAD_NOT_FOUND when none exists. */
INJRAD_API injrad_status injrad_surface_search(int n, int orientable, int cycle_length,
                                               injrad_surface** out);
INJRAD_API void injrad_surface_destroy(injrad_surface* surface);
INJRAD_API injrad_status injrad_surface_euler_characteristic(const injrad_surface* surface,
                                                             int* out);
INJRAD_API injrad_status injrad_surface_cycle_count(const injrad_surface* surface, int* out);
INJRAD_API injrad_status injrad_surface_cone_angle(const injrad_surface* surface, int cycle,
                                                   double* out);
INJRAD_API injrad_status injrad_surface_pairing_text(const injrad_surface* surface, char** out);
INJRAD_API injrad_status injrad_surface_center_injectivity_radius(const injrad_surface* surface,
                                                                  double* out);
/* Combinatorics plus loops at the center up to max_length (<= 0 selects
 * 2.5 apothems) with at most max_copies developed copies (0 selects the
 * default). On INJRAD_BUDGET_EXCEEDED *out still holds the combinatorial
 * part of the report. */
INJRAD_API injrad_status injrad_surface_analyze(const injrad_surface* surface, double max_length,
                                                size_t max_copies, injrad_format format,
                                                char** out);
/* Search outcome as a report; a missing pairing is a record, not an error. */
INJRAD_API injrad_status injrad_flat_search_report(int n, int orientable, int cycle_length,
                                                   injrad_format format, char** out);

/* Hyperbolic groups. Matrices are row-major (a, b, c, d). */
INJRAD_API injrad_status injrad_group_thrice_punctured(injrad_group** out);
/* generator_count matrices, each rescaled to unit determinant. */
INJRAD_API injrad_status injrad_group_create(const char* name, const double* abcd,
                                             size_t generator_count, injrad_group** out);
INJRAD_API void injrad_group_destroy(injrad_group* group);
/* Requires |ad - bc - 1| <= 1e-9. */
INJRAD_API injrad_status injrad_translation_length(const double abcd[4], double* out);
INJRAD_API injrad_status injrad_translation_length_report(const double abcd[4],
                                                          injrad_format format, char** out);
INJRAD_API injrad_status injrad_pointwise_systole(const injrad_group* group, double x, double y,
                                                  int word_length, double* out);
INJRAD_API injrad_status injrad_sup_radius(const injrad_group* group, int grid, int refine,
                                           int word_length, double* value, double* x, double* y);
INJRAD_API injrad_status injrad_sup_radius_report(const injrad_group* group, int grid, int refine,
                                                  int word_length, injrad_format format,
                                                  char** out);
INJRAD_API injrad_status injrad_ideal_triangle_inradius(double* out);
INJRAD_API injrad_status injrad_intersecting_pair_check(const double a[4], const double b[4],
                                                        double* product, int* holds);

/* Warped collar smoothing. profile: "cosh", "flat", "cos" or "file:<path>";
 * curvature_class: "le-1", "ge-1" or "le1". all_pass may be NULL. */
INJRAD_API injrad_status injrad_smooth_report(const char* profile, double t0, double ell,
                                              const char* curvature_class, double epsilon,
                                              injrad_format format, char** out, int* all_pass);

/* Reproduction suite. Criteria are numbered 1..injrad_criterion_count(). */
INJRAD_API int injrad_criterion_count(void);
INJRAD_API injrad_status injrad_run_criterion(int index, uint64_t seed, int* pass);
INJRAD_API injrad_status injrad_reproduce_all(uint64_t seed, injrad_format format, char** out,
                                              int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* INJRAD_INJRAD_H */
