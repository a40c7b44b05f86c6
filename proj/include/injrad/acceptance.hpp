#pragma once

// Reproduction recipes: each criterion runs module code against its own
// oracle and returns a verdict with the numbers behind it.

#include <cstdint>
#include <string>
#include <vector>

#include "injrad/report.hpp"

namespace injrad::acceptance {

struct Criterion {
  int index = 0;
  std::string name;
  bool pass = false;
  report::Json details;
};

inline constexpr int kCriterionCount = 9;

/// Runs criterion `index` (1-based). The seed drives the random site sets.
Criterion run_criterion(int index, std::uint64_t seed);

/// All criteria in index order.
std::vector<Criterion> run_all(std::uint64_t seed);

/// {seed, all_pass, rows: [{index, name, pass}], criteria: [...details]}.
report::Json summary(std::uint64_t seed, const std::vector<Criterion>& results);

/// Regular k-gon sites 2r u(2 pi i / k), whose Dirichlet cell is the
/// regular k-gon with inradius r.
std::vector<Vec2> regular_sites(int k, double r);

/// 3..12 sites with radii in [0.2, 3], redrawn until the Dirichlet cell
/// clipped at 1e3 is bounded by bisectors alone.
std::vector<Vec2> random_bounded_sites(std::uint64_t seed, int index);

}  // namespace injrad::acceptance
