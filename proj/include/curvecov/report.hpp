#ifndef CURVECOV_REPORT_HPP
#define CURVECOV_REPORT_HPP

/// \brief Deterministic report emission. Renders per-pair distance-estimate
/// sweeps as CSV, JSON, or an SVG scatter plot, and cover quasi-isometry
/// fits as CSV or JSON. Byte-identical output for identical input.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "curvecov/antichain.hpp"
#include "curvecov/experiments.hpp"

namespace curvecov {

enum class ReportFormat { Csv, Json, Svg };

inline std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Svg: return "svg";
  }
  return "?";
}

inline ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "svg") return ReportFormat::Svg;
  throw std::invalid_argument("parse_format: unknown format '" +
                              std::string(s) + "'");
}

namespace detail {

/// Shortest decimal that round-trips the double (locale-independent).
inline std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

/// Fixed two-decimal formatting for SVG coordinates.
inline std::string fmt_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// renderers
// ---------------------------------------------------------------------------

inline std::string render_csv(const std::vector<EstimateReport>& rows) {
  std::string out =
      "a,b,distance,antichain_size,thick_total,estimate,fitted_K\n";
  for (const EstimateReport& r : rows) {
    out += r.pair.first.str() + "," + r.pair.second.str() + "," +
           std::to_string(r.distance) + "," + std::to_string(r.J_size) + "," +
           detail::fmt_double(r.gamma_total) + "," +
           detail::fmt_double(static_cast<double>(r.J_size) + r.gamma_total) +
           "," + detail::fmt_double(r.fitted_K) + "\n";
  }
  return out;
}

inline std::string render_json(const std::vector<EstimateReport>& rows) {
  nlohmann::ordered_json doc;
  doc["schema"] = "curvecov-report/1";
  doc["kind"] = "distance-estimate";
  doc["results"] = nlohmann::ordered_json::array();
  for (const EstimateReport& r : rows) {
    nlohmann::ordered_json item;
    item["a"] = r.pair.first.str();
    item["b"] = r.pair.second.str();
    item["distance"] = r.distance;
    item["antichain_size"] = r.J_size;
    item["thick_total"] = r.gamma_total;
    item["estimate"] = static_cast<double>(r.J_size) + r.gamma_total;
    item["fitted_K"] = r.fitted_K;
    doc["results"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

/// Scatter plot of distance against the combined estimate |J| + |Gamma|.
inline std::string render_svg(const std::vector<EstimateReport>& rows) {
  const double width = 480, height = 360;
  const double ml = 56, mr = 16, mt = 16, mb = 48;  // margins
  double max_x = 1.0, max_y = 1.0;
  for (const EstimateReport& r : rows) {
    max_x = std::max(max_x, static_cast<double>(r.J_size) + r.gamma_total);
    max_y = std::max(max_y, static_cast<double>(r.distance));
  }
  auto sx = [&](double v) {
    return ml + (width - ml - mr) * v / max_x;
  };
  auto sy = [&](double v) {
    return height - mb - (height - mt - mb) * v / max_y;
  };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       detail::fmt_coord(width) + "\" height=\"" + detail::fmt_coord(height) +
       "\" viewBox=\"0 0 " + detail::fmt_coord(width) + " " +
       detail::fmt_coord(height) + "\">\n";
  s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  s += "  <line x1=\"" + detail::fmt_coord(ml) + "\" y1=\"" +
       detail::fmt_coord(height - mb) + "\" x2=\"" +
       detail::fmt_coord(width - mr) + "\" y2=\"" +
       detail::fmt_coord(height - mb) + "\" stroke=\"black\"/>\n";
  s += "  <line x1=\"" + detail::fmt_coord(ml) + "\" y1=\"" +
       detail::fmt_coord(mt) + "\" x2=\"" + detail::fmt_coord(ml) +
       "\" y2=\"" + detail::fmt_coord(height - mb) +
       "\" stroke=\"black\"/>\n";
  s += "  <text x=\"" + detail::fmt_coord((ml + width - mr) / 2) +
       "\" y=\"" + detail::fmt_coord(height - 12) +
       "\" text-anchor=\"middle\" font-size=\"12\">|J| + "
       "|&#915;(&#949;,L)|</text>\n";
  s += "  <text x=\"14\" y=\"" + detail::fmt_coord((mt + height - mb) / 2) +
       "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
       "14 " +
       detail::fmt_coord((mt + height - mb) / 2) +
       ")\">distance</text>\n";
  // extremal tick labels
  s += "  <text x=\"" + detail::fmt_coord(width - mr) + "\" y=\"" +
       detail::fmt_coord(height - mb + 16) +
       "\" text-anchor=\"end\" font-size=\"10\">" +
       detail::fmt_double(max_x) + "</text>\n";
  s += "  <text x=\"" + detail::fmt_coord(ml - 4) + "\" y=\"" +
       detail::fmt_coord(mt + 4) + "\" text-anchor=\"end\" font-size=\"10\">" +
       detail::fmt_double(max_y) + "</text>\n";
  for (const EstimateReport& r : rows) {
    double x = sx(static_cast<double>(r.J_size) + r.gamma_total);
    double y = sy(static_cast<double>(r.distance));
    s += "  <circle cx=\"" + detail::fmt_coord(x) + "\" cy=\"" +
         detail::fmt_coord(y) +
         "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.6\"><title>" +
         r.pair.first.str() + " , " + r.pair.second.str() +
         "</title></circle>\n";
  }
  s += "</svg>\n";
  return s;
}

inline std::string render_csv(const QIFitReport& rep) {
  std::string out =
      "fitted_Q,upper_factor,violations,count,max_base,max_lifted,"
      "mean_base,mean_lifted\n";
  out += detail::fmt_double(rep.fitted_Q) + "," +
         detail::fmt_double(rep.upper_factor) + "," +
         std::to_string(rep.violations) + "," +
         std::to_string(rep.stats.count) + "," +
         std::to_string(rep.stats.max_base) + "," +
         std::to_string(rep.stats.max_lifted) + "," +
         detail::fmt_double(rep.stats.mean_base) + "," +
         detail::fmt_double(rep.stats.mean_lifted) + "\n";
  return out;
}

inline std::string render_json(const QIFitReport& rep) {
  nlohmann::ordered_json doc;
  doc["schema"] = "curvecov-report/1";
  doc["kind"] = "cover-qi";
  nlohmann::ordered_json item;
  item["fitted_Q"] = rep.fitted_Q;
  item["upper_factor"] = rep.upper_factor;
  item["violations"] = rep.violations;
  item["count"] = rep.stats.count;
  item["max_base"] = rep.stats.max_base;
  item["max_lifted"] = rep.stats.max_lifted;
  item["mean_base"] = rep.stats.mean_base;
  item["mean_lifted"] = rep.stats.mean_lifted;
  doc["results"] = nlohmann::ordered_json::array({std::move(item)});
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// file emission
// ---------------------------------------------------------------------------

namespace detail {

inline void write_file(const std::filesystem::path& path,
                       std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("emit_report: cannot open '" + path.string() +
                             "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out)
    throw std::runtime_error("emit_report: write to '" + path.string() +
                             "' failed");
}

}  // namespace detail

inline void emit_report(const std::vector<EstimateReport>& rows,
                        ReportFormat format,
                        const std::filesystem::path& path) {
  switch (format) {
    case ReportFormat::Csv: detail::write_file(path, render_csv(rows)); break;
    case ReportFormat::Json:
      detail::write_file(path, render_json(rows));
      break;
    case ReportFormat::Svg: detail::write_file(path, render_svg(rows)); break;
  }
}

inline void emit_report(const QIFitReport& rep, ReportFormat format,
                        const std::filesystem::path& path) {
  switch (format) {
    case ReportFormat::Csv: detail::write_file(path, render_csv(rep)); break;
    case ReportFormat::Json:
      detail::write_file(path, render_json(rep));
      break;
    case ReportFormat::Svg:
      throw std::invalid_argument(
          "emit_report: svg output is only defined for per-pair estimate "
          "reports");
  }
}

}  // namespace curvecov

#endif  // CURVECOV_REPORT_HPP
