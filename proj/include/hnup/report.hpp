#pragma once

// Serialization helpers: quantities tagged with their arithmetic mode, atomic
// file output, and deterministic SVG/CSV renderings of reports.

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hnup/errors.hpp"
#include "hnup/rational.hpp"

namespace hnup {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

inline json exact_quantity(const Rational& value) {
  return {{"value", to_string(value)}, {"mode", "exact"}, {"tol", 0}};
}

inline json log_quantity(long double value, double tol) {
  return {{"value", static_cast<double>(value)}, {"mode", "log-space"}, {"tol", tol}};
}

inline json monte_carlo_quantity(double value, double standard_error) {
  return {{"value", value}, {"mode", "monte-carlo"}, {"tol", standard_error}};
}

/// Numeric payload of a tagged quantity: exact values are converted through
/// their "p/q" strings, everything else is read directly.
inline double quantity_value(const json& q) {
  const json& v = q.at("value");
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  return v.get<double>();
}

inline Rational quantity_exact(const json& q) {
  if (q.at("mode") != "exact") throw PreconditionError("quantity is not exact");
  return parse_rational(q.at("value").get<std::string>());
}

/// Writes through a temporary sibling and renames it into place.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " to " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace svg {

/// Coordinates are emitted with a fixed number of decimals so that identical
/// reports always produce identical bytes.
inline std::string num(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string header(double width, double height) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      num(width), num(height));
}

inline std::string rect(double x, double y, double w, double h, std::string_view style) {
  return fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {}/>\n", num(x), num(y), num(w), num(h),
                     style);
}

inline std::string circle(double cx, double cy, double r, std::string_view style) {
  return fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>\n", num(cx), num(cy), num(r), style);
}

inline std::string text(double x, double y, std::string_view body) {
  return fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\">{}</text>\n", num(x), num(y),
                     body);
}

inline constexpr std::string_view footer = "</svg>\n";

}  // namespace svg

/// One row per depth-k basic interval drawn as a bar on [0, 1].
inline std::string render_intervals_svg(const json& build) {
  const double width = 1000.0, margin = 20.0, bar = 24.0;
  const auto& intervals = build.at("intervals");
  std::string out = svg::header(width + 2 * margin, 2 * margin + bar + 20.0);
  out += svg::text(margin, 14.0,
                   fmt::format("{} m={} depth={}", build.at("spec").at("variant").get<std::string>(),
                               build.at("spec").at("m").get<int>(), build.at("depth").get<int>()));
  for (const auto& iv : intervals) {
    const double left = parse_rational(iv.at("left").get<std::string>()).get_d();
    const double length = parse_rational(iv.at("length").get<std::string>()).get_d();
    out += svg::rect(margin + left * width, margin + 10.0, std::max(length * width, 0.0), bar, "fill=\"black\"");
  }
  out += svg::footer;
  return out;
}

/// Rings B_n as circles on a log-radius scale with component bounding boxes.
/// Radii span many orders of magnitude, so the picture maps |z| = 2^{-t} to
/// radius proportional to (t_max - t).
inline std::string render_assembly_svg(const json& assembly) {
  const double size = 800.0, c = size / 2.0;
  const auto& rings = assembly.at("rings");
  double t_max = 1.0;
  for (const auto& r : rings) t_max = std::max(t_max, -std::log2(quantity_value(r.at("inner"))));
  auto radius = [&](double v) { return (c - 20.0) * (t_max + std::log2(v)) / t_max; };
  std::string out = svg::header(size, size);
  for (const auto& r : rings) {
    const bool empty = r.at("empty").get<bool>();
    const std::string style = empty ? "fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\""
                                    : "fill=\"none\" stroke=\"#333333\"";
    out += svg::circle(c, c, radius(quantity_value(r.at("outer"))), style);
  }
  for (const auto& comp : assembly.at("components")) {
    const auto& b = comp.at("bounds");
    const double x0 = radius(parse_rational(b.at("x0").get<std::string>()).get_d());
    const double x1 = radius(parse_rational(b.at("x1").get<std::string>()).get_d());
    const double h = std::max(x1 - x0, 2.0);
    out += svg::rect(c + x0, c - h / 2.0, std::max(x1 - x0, 2.0), h, "fill=\"#3366cc\" fill-opacity=\"0.5\"");
    out += svg::text(c + x1 + 4.0, c - h / 2.0 - 4.0, fmt::format("m={}", comp.at("m").get<int>()));
  }
  out += svg::circle(c, c, 2.0, "fill=\"black\"");
  out += svg::footer;
  return out;
}

/// CSV with a header row; values are written with 17 significant digits.
inline std::string csv_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt::format("{:.17g}", row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace hnup
