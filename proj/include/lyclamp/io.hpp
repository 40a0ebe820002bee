#pragma once

#include "lyclamp/harness.hpp"

#include "json.hpp"

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace lyclamp {

inline constexpr std::array<std::string_view, 15> kTraceColumns = {
    "t", "x1", "x2", "y_r", "y_r_dot", "y_r_ddot", "e", "s",
    "u_b", "threshold", "u", "overridden", "V1", "V2", "decrease_ok"};

/// Header row plus one row per record; reals use 17 significant digits,
/// booleans 0/1.
void write_trace_csv(std::ostream& os, const Trace& trace);

/// Inverse of write_trace_csv. Throws Error on a bad header or row.
std::vector<StepRecord> read_trace_csv(std::istream& is);

/// Three stacked panels (y and y_r, e, u) as a standalone SVG document.
void write_svg_plot(std::ostream& os, const Trace& trace, std::string_view title);

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const Termination& t);

}  // namespace lyclamp
