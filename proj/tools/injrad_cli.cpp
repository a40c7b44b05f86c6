// Command-line front end over the injrad C API.
//
// Exit codes: 0 success (and every verdict passed), 1 failure or a failed
// verdict, 2 usage error, 3 budget exceeded (a partial report is printed).

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "injrad/injrad.h"

namespace {

struct Output {
  std::string format = "json";
  std::string out_dir;

  injrad_format c_format() const {
    return format == "csv" ? INJRAD_FORMAT_CSV : INJRAD_FORMAT_JSON;
  }
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out-dir", out.out_dir,
                  "Also write the report here (default: $INJRAD_OUTPUT_DIR)");
}

int exit_code(injrad_status s) {
  switch (s) {
    case INJRAD_OK:
      return 0;
    case INJRAD_INVALID_ARGUMENT:
      return 2;
    case INJRAD_BUDGET_EXCEEDED:
      return 3;
    default:
      return 1;
  }
}

int fail(injrad_status s) {
  std::cerr << "error (" << injrad_status_name(s) << "): " << injrad_last_error() << "\n";
  return exit_code(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Prints the report, mirrors it into the output directory, frees it.
void publish(char* text, const Output& out, const std::string& stem) {
  if (!text) return;
  std::cout << text;
  std::string dir = out.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("INJRAD_OUTPUT_DIR")) dir = env;
  }
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / (stem + "." + out.format);
    std::ofstream file(path);
    file << text;
    if (!file) std::cerr << "warning: could not write " << path.string() << "\n";
  }
  injrad_string_free(text);
}

// Runs a report-producing call and publishes whatever it returned.
template <class Fn>
int report(const Output& out, const std::string& stem, Fn&& fn) {
  char* text = nullptr;
  const injrad_status s = fn(&text);
  publish(text, out, stem);
  return s == INJRAD_OK ? 0 : fail(s);
}

std::vector<double> parse_matrix(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != cell.size()) throw CLI::ValidationError("--matrix", "not a number: " + cell);
    v.push_back(x);
  }
  if (v.size() != 4) throw CLI::ValidationError("--matrix", "expected a,b,c,d");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Injectivity-radius toolkit: bounds, Dirichlet cells, flat cone surfaces, "
               "hyperbolic systoles and warped-collar smoothing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(injrad_version()));

  Output out;

  auto* bounds = app.add_subcommand("bounds", "Constant table and chi-dependent bounds");
  int chi = 0;
  double area = 0.0;
  auto* chi_opt = bounds->add_option("--chi", chi, "Euler characteristic (<= -1)");
  auto* area_opt = bounds->add_option("--area", area, "Area for the bounded-curvature radius bound");
  add_output_options(bounds, out);

  auto* vor = app.add_subcommand("voronoi", "Dirichlet cell of the origin");
  std::string sites_path;
  double clip = 100.0;
  vor->add_option("--sites", sites_path, "Site file: one 'x y' pair per line")->required();
  vor->add_option("--clip", clip, "Half-width of the bounding square")->capture_default_str();
  add_output_options(vor, out);

  auto* flat = app.add_subcommand("flat", "Flat cone surfaces from polygon side pairings");
  flat->require_subcommand(1);
  auto* analyze = flat->add_subcommand("analyze", "Vertex cycles and loops at the center");
  std::string pairing_path;
  double max_length = 0.0, apothem = 1.0;
  std::size_t max_copies = 0;
  analyze->add_option("--pairing", pairing_path, "Pairing file")->required();
  analyze->add_option("--max-length", max_length, "Loop length cutoff (default 2.5 apothems)");
  analyze->add_option("--apothem", apothem, "Polygon inradius")->capture_default_str();
  analyze->add_option("--max-copies", max_copies, "Unfolding copy cap (default 200000)");
  add_output_options(analyze, out);
  auto* search = flat->add_subcommand("search", "Pairing with uniform vertex-cycle length");
  int n = 0, cycles = 3;
  bool orientable = false;
  search->add_option("--n", n, "Number of polygon sides")->required();
  search->add_flag("--orientable", orientable, "Require an orientable quotient");
  search->add_option("--cycles", cycles, "Vertex cycle length")->capture_default_str();
  add_output_options(search, out);

  auto* hyp = app.add_subcommand("hyp", "Hyperbolic surfaces");
  hyp->require_subcommand(1);
  auto* sup = hyp->add_subcommand("sup-radius", "Supremum of the injectivity radius");
  std::string group = "thrice-punctured";
  int grid = 200, refine = 20, word_length = 8;
  sup->add_option("--group", group, "Group")
      ->check(CLI::IsMember({"thrice-punctured"}))
      ->capture_default_str();
  sup->add_option("--grid", grid, "Grid points per axis")->capture_default_str();
  sup->add_option("--refine", refine, "Refinement steps")->capture_default_str();
  sup->add_option("--word-length", word_length, "Maximal word length")->capture_default_str();
  add_output_options(sup, out);
  auto* tl = hyp->add_subcommand("translation-length", "Translation length of a matrix");
  std::string matrix_text;
  tl->add_option("--matrix", matrix_text, "Entries a,b,c,d with ad - bc = 1")->required();
  add_output_options(tl, out);

  auto* smooth = app.add_subcommand("smooth", "Smooth a warped collar and certify it");
  std::string profile, cls;
  double t0 = 0.0, ell = 0.0, epsilon = 0.0;
  smooth->add_option("--profile", profile, "cosh | flat | cos | file:<path>")->required();
  smooth->add_option("--t0", t0, "Collar depth")->required();
  smooth->add_option("--ell", ell, "Boundary length")->required();
  smooth->add_option("--class", cls, "Curvature class")
      ->check(CLI::IsMember({"le-1", "ge-1", "le1"}))
      ->required();
  smooth->add_option("--epsilon", epsilon, "Tolerance")->required();
  add_output_options(smooth, out);

  auto* repro = app.add_subcommand("reproduce-all", "Run every reproduction criterion");
  std::uint64_t seed = 7;
  repro->add_option("--seed", seed, "Seed for randomized suites")->capture_default_str();
  add_output_options(repro, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*bounds) {
      return report(out, "bounds", [&](char** text) {
        return injrad_bounds_report(*chi_opt ? 1 : 0, chi, *area_opt ? 1 : 0, area,
                                    out.c_format(), text);
      });
    }
    if (*vor) {
      const std::string text = read_file(sites_path);
      injrad_cell* cell = nullptr;
      if (auto s = injrad_cell_from_text(text.c_str(), clip, &cell); s != INJRAD_OK) return fail(s);
      const int rc = report(out, "voronoi", [&](char** t) {
        return injrad_cell_report(cell, out.c_format(), t);
      });
      injrad_cell_destroy(cell);
      return rc;
    }
    if (*analyze) {
      const std::string text = read_file(pairing_path);
      injrad_surface* surface = nullptr;
      if (auto s = injrad_surface_from_text(text.c_str(), apothem, &surface); s != INJRAD_OK) {
        return fail(s);
      }
      const int rc = report(out, "flat-analyze", [&](char** t) {
        return injrad_surface_analyze(surface, max_length, max_copies, out.c_format(), t);
      });
      injrad_surface_destroy(surface);
      return rc;
    }
    if (*search) {
      return report(out, "flat-search", [&](char** t) {
        return injrad_flat_search_report(n, orientable ? 1 : 0, cycles, out.c_format(), t);
      });
    }
    if (*sup) {
      injrad_group* g = nullptr;
      if (auto s = injrad_group_thrice_punctured(&g); s != INJRAD_OK) return fail(s);
      const int rc = report(out, "hyp-sup-radius", [&](char** t) {
        return injrad_sup_radius_report(g, grid, refine, word_length, out.c_format(), t);
      });
      injrad_group_destroy(g);
      return rc;
    }
    if (*tl) {
      const auto m = parse_matrix(matrix_text);
      return report(out, "hyp-translation-length", [&](char** t) {
        return injrad_translation_length_report(m.data(), out.c_format(), t);
      });
    }
    if (*smooth) {
      int all_pass = 0;
      const int rc = report(out, "smooth", [&](char** t) {
        return injrad_smooth_report(profile.c_str(), t0, ell, cls.c_str(), epsilon,
                                    out.c_format(), t, &all_pass);
      });
      return rc != 0 ? rc : (all_pass ? 0 : 1);
    }
    if (*repro) {
      int all_pass = 0;
      const int rc = report(out, "reproduce-all", [&](char** t) {
        return injrad_reproduce_all(seed, out.c_format(), t, &all_pass);
      });
      return rc != 0 ? rc : (all_pass ? 0 : 1);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
