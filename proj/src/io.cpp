#include "lyclamp/io.hpp"

#include "lyclamp/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace lyclamp {

void write_trace_csv(std::ostream& os, const Trace& trace) {
  std::string line;
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (i) line += ',';
    line += kTraceColumns[i];
  }
  os << line << '\n';

  fmt::memory_buffer buf;
  for (const StepRecord& r : trace.records) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf),
                   "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                   "{:.17g},{:.17g},{:.17g},{:d},{:.17g},{:.17g},{:d}\n",
                   r.t, r.x1, r.x2, r.y_r, r.y_r_dot, r.y_r_ddot, r.e, r.s, r.u_b, r.threshold,
                   r.u, r.overridden ? 1 : 0, r.V1, r.V2, r.decrease_ok ? 1 : 0);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

namespace {

double parse_real(std::string_view field, std::size_t row) {
  // strtod accepts everything {:.17g} emits, including inf/nan
  std::string tmp(field);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw Error("trace CSV row " + std::to_string(row) + ": bad number '" + tmp + "'");
  }
  return v;
}

bool parse_flag(std::string_view field, std::size_t row) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw Error("trace CSV row " + std::to_string(row) + ": bad flag '" + std::string(field) + "'");
}

}  // namespace

std::vector<StepRecord> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("trace CSV is empty");
  {
    std::string expected;
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
      if (i) expected += ',';
      expected += kTraceColumns[i];
    }
    if (line != expected) throw Error("trace CSV header mismatch");
  }

  std::vector<StepRecord> out;
  std::size_t row = 1;
  std::vector<std::string_view> f;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    f.clear();
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != kTraceColumns.size()) {
      throw Error("trace CSV row " + std::to_string(row) + ": expected " +
                  std::to_string(kTraceColumns.size()) + " fields");
    }
    StepRecord r;
    r.t = parse_real(f[0], row);
    r.x1 = parse_real(f[1], row);
    r.x2 = parse_real(f[2], row);
    r.y_r = parse_real(f[3], row);
    r.y_r_dot = parse_real(f[4], row);
    r.y_r_ddot = parse_real(f[5], row);
    r.e = parse_real(f[6], row);
    r.s = parse_real(f[7], row);
    r.u_b = parse_real(f[8], row);
    r.threshold = parse_real(f[9], row);
    r.u = parse_real(f[10], row);
    r.overridden = parse_flag(f[11], row);
    r.V1 = parse_real(f[12], row);
    r.V2 = parse_real(f[13], row);
    r.decrease_ok = parse_flag(f[14], row);
    out.push_back(r);
  }
  return out;
}

namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kPanelGap = 40.0;

struct Series {
  const char* label;
  const char* color;
  double StepRecord::*field;
};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_panel(std::ostream& os, const std::vector<StepRecord>& recs, double top,
                 std::string_view title, std::initializer_list<Series> series) {
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& r : recs) {
    for (const auto& s : series) {
      const double v = r.*(s.field);
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!(lo <= hi)) lo = hi = 0.0;
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double t0 = recs.empty() ? 0.0 : recs.front().t;
  const double t1 = recs.empty() ? 1.0 : std::max(recs.back().t, t0 + 1e-12);
  auto px = [&](double t) { return kMarginLeft + (t - t0) / (t1 - t0) * plot_w; };
  auto py = [&](double v) { return top + kPanelHeight - (v - lo) / (hi - lo) * kPanelHeight; };

  os << fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"#444\"/>\n",
      kMarginLeft, top, plot_w, kPanelHeight);
  os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\">{}</text>\n", kMarginLeft,
                    top - 8, xml_escape(title));
  os << fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
      kMarginLeft - 6, top + 10, hi);
  os << fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
      kMarginLeft - 6, top + kPanelHeight, lo);
  if (lo < 0.0 && hi > 0.0) {
    os << fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbb\" "
        "stroke-dasharray=\"4 3\"/>\n",
        kMarginLeft, py(0.0), kMarginLeft + plot_w, py(0.0));
  }

  double legend_x = kMarginLeft + plot_w;
  for (auto it = std::rbegin(series); it != std::rend(series); ++it) {
    os << fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\" "
        "fill=\"{}\">{}</text>\n",
        legend_x, top - 8, it->color, xml_escape(it->label));
    legend_x -= 60.0;
  }

  for (const auto& s : series) {
    std::string pts;
    pts.reserve(recs.size() * 16);
    for (const auto& r : recs) {
      const double v = r.*(s.field);
      if (!std::isfinite(v)) continue;
      fmt::format_to(std::back_inserter(pts), "{:.2f},{:.2f} ", px(r.t), py(v));
    }
    os << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << s.color << "\" points=\""
       << pts << "\"/>\n";
  }
}

}  // namespace

void write_svg_plot(std::ostream& os, const Trace& trace, std::string_view title) {
  const double height = kMarginTop + 3 * kPanelHeight + 3 * kPanelGap;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\">\n",
      kWidth, height);
  os << fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", kWidth, height);
  os << fmt::format("<text x=\"{:.2f}\" y=\"20\" font-size=\"15\">{}</text>\n", kMarginLeft,
                    xml_escape(title));

  const auto& recs = trace.records;
  double top = kMarginTop + kPanelGap / 2;
  write_panel(os, recs, top, "output y and reference y_r",
              {{"y_r", "#d62728", &StepRecord::y_r}, {"y", "#1f77b4", &StepRecord::x1}});
  top += kPanelHeight + kPanelGap;
  write_panel(os, recs, top, "tracking error e", {{"e", "#2ca02c", &StepRecord::e}});
  top += kPanelHeight + kPanelGap;
  write_panel(os, recs, top, "control",
              {{"u_b", "#bbbbbb", &StepRecord::u_b}, {"u", "#9467bd", &StepRecord::u}});
  os << fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">t [s]</text>\n",
      kMarginLeft + (kWidth - kMarginLeft - kMarginRight) / 2, height - 6);
  os << "</svg>\n";
}

nlohmann::json to_json(const Metrics& m) {
  return {{"t_settle", m.t_settle},
          {"max_abs_e_after", m.max_abs_e_after},
          {"u_min", m.u_min},
          {"u_max", m.u_max},
          {"max_abs_u", m.max_abs_u},
          {"ub_min", m.ub_min},
          {"ub_max", m.ub_max},
          {"override_fraction", m.override_fraction},
          {"decrease_violations", m.decrease_violations},
          {"chattering_index", m.chattering_index},
          {"steps", m.steps}};
}

nlohmann::json to_json(const Termination& t) {
  if (t.completed) return {{"status", "completed"}, {"steps", t.step}};
  return {{"status", "aborted"}, {"step", t.step}, {"reason", t.reason}};
}

}  // namespace lyclamp
