#pragma once

// JSON documents for every module result and their CSV projection.
// Key order is fixed, so equal inputs serialize to identical bytes.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "injrad/bounds.hpp"
#include "injrad/flat_cone.hpp"
#include "injrad/hyperbolic.hpp"
#include "injrad/voronoi.hpp"
#include "injrad/warped.hpp"

namespace injrad::report {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };

Format parse_format(std::string_view text);

/// JSON is pretty-printed with a trailing newline. CSV emits the "rows"
/// array when present (one line per row), otherwise key,value lines; nested
/// objects become dotted keys and arrays are dropped.
std::string render(const Json& doc, Format format);

Json to_json(const bounds::BoundReport& row);

/// Constant table; with chi, also the chi-dependent bounds; with area, the
/// bounded-curvature radius bound.
Json bounds_report(std::optional<int> chi, std::optional<double> area);

Json cell_report(const voronoi::ConvexCell& cell);

/// Combinatorics always; loops and the ratio when `loops` is given.
Json flat_analysis(const flat::ConeSurface& surface, const flat::LoopSearch* loops,
                   std::size_t max_loops_listed = 64);

Json flat_search_report(int n, bool orientable, int cycle_length,
                        const std::optional<flat::SidePairing>& found);

Json sup_radius_report(const hyp::FuchsianGroup& group, const hyp::SupRadiusResult& r);

Json translation_length_report(const hyp::MobiusMap& m);

Json pair_check_report(const hyp::PairCheck& c);

Json smoothing_report(const warped::WarpedMetric& wm, const warped::SmoothingCertificate& c);

}  // namespace injrad::report
