/*
 * Copyright (c) 2026 The qkdps Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "report.hpp"

#include <boost/algorithm/string.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <locale>
#include <map>
#include <sstream>

#include "error.hpp"

namespace qkdps {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) fail(ErrorCode::kNumerical, "cannot format number");
  return std::string(buf, ptr);
}

double parse_num(const std::string& s, size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::kParse, "csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

// Statuses may contain commas or quotes; quote them RFC 4180 style.
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string xml_escape(const std::string& s) {
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

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "distance_km", "mode",  "n_used",         "x_used",              "log2_g",      "entropy_lb_bits_per_round",
      "b_stat",      "leak",  "theta",          "key_length_bits",     "key_rate_per_second", "secrecy_eps",
      "status"};
  return cols;
}

void emit_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << boost::algorithm::join(csv_columns(), ",") << '\n';
  for (const SweepRow& r : rows) {
    out << fmt(r.distance_km) << ',' << quote(r.mode) << ',' << fmt(r.n_used) << ',' << fmt(r.x_used) << ','
        << fmt(r.log2_g) << ',' << fmt(r.entropy_lb_bits_per_round) << ',' << fmt(r.b_stat) << ','
        << fmt(r.leak) << ',' << fmt(r.theta) << ',' << fmt(r.key_length_bits) << ','
        << fmt(r.key_rate_per_second) << ',' << fmt(r.secrecy_eps) << ',' << quote(r.status) << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  emit_csv(out, rows);
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::vector<SweepRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "csv: missing header");
  boost::algorithm::trim_right_if(line, boost::algorithm::is_any_of("\r"));
  if (split_csv_line(line) != csv_columns()) fail(ErrorCode::kParse, "csv: unexpected header '" + line + "'");

  std::vector<SweepRow> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    boost::algorithm::trim_right_if(line, boost::algorithm::is_any_of("\r"));
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != csv_columns().size())
      fail(ErrorCode::kParse, "csv line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(csv_columns().size()) + " fields");
    SweepRow r;
    r.distance_km = parse_num(f[0], lineno);
    r.mode = f[1];
    r.n_used = parse_num(f[2], lineno);
    r.x_used = parse_num(f[3], lineno);
    r.log2_g = parse_num(f[4], lineno);
    r.entropy_lb_bits_per_round = parse_num(f[5], lineno);
    r.b_stat = parse_num(f[6], lineno);
    r.leak = parse_num(f[7], lineno);
    r.theta = parse_num(f[8], lineno);
    r.key_length_bits = parse_num(f[9], lineno);
    r.key_rate_per_second = parse_num(f[10], lineno);
    r.secrecy_eps = parse_num(f[11], lineno);
    r.status = f[12];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return parse_csv(in);
}

void emit_svg(std::ostream& out, const std::vector<SweepRow>& rows) {
  constexpr double kW = 720, kH = 480, kLeft = 80, kRight = 160, kTop = 30, kBottom = 60;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double dmin = INFINITY, dmax = -INFINITY, rmin = INFINITY, rmax = -INFINITY;
  for (const SweepRow& r : rows) {
    if (!series.count(r.mode)) order.push_back(r.mode);
    auto& s = series[r.mode];
    dmin = std::min(dmin, r.distance_km);
    dmax = std::max(dmax, r.distance_km);
    if (r.status == "ok" && r.key_rate_per_second > 0.0 && std::isfinite(r.key_rate_per_second)) {
      s.emplace_back(r.distance_km, r.key_rate_per_second);
      rmin = std::min(rmin, r.key_rate_per_second);
      rmax = std::max(rmax, r.key_rate_per_second);
    }
  }
  if (!std::isfinite(dmin)) dmin = 0, dmax = 1;
  if (dmax <= dmin) dmax = dmin + 1;
  int dec_lo = 0, dec_hi = 1;
  if (std::isfinite(rmin)) {
    dec_lo = static_cast<int>(std::floor(std::log10(rmin)));
    dec_hi = std::max(static_cast<int>(std::ceil(std::log10(rmax))), dec_lo + 1);
  }

  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double d) { return kLeft + (d - dmin) / (dmax - dmin) * pw; };
  auto py = [&](double r) { return kTop + (dec_hi - std::log10(r)) / (dec_hi - dec_lo) * ph; };

  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(6);
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
    << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n"
    << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = dec_lo; k <= dec_hi; ++k) {
    const double y = py(std::pow(10.0, k));
    s << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
      << "\" stroke=\"#dddddd\"/>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << k << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double d = dmin + (dmax - dmin) * i / 5.0;
    s << "<text x=\"" << px(d) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">" << d << "</text>\n";
  }
  s << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">distance (km)</text>\n"
    << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << kTop + ph / 2 << ")\">key rate (bits/s)</text>\n";

  int legend = 0;
  for (size_t m = 0; m < order.size(); ++m) {
    const auto& pts = series[order[m]];
    if (pts.empty()) continue;
    const char* color = kColors[m % (sizeof kColors / sizeof *kColors)];
    s << "<polyline class=\"mode\" data-mode=\"" << xml_escape(order[m]) << "\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) s << (i ? " " : "") << px(pts[i].first) << ',' << py(pts[i].second);
    s << "\"/>\n";
    const double ly = kTop + 10 + 18 * legend++;
    s << "<line x1=\"" << kW - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kW - kRight + 36 << "\" y2=\""
      << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << kW - kRight + 42 << "\" y=\"" << ly + 4 << "\">" << xml_escape(order[m]) << "</text>\n";
  }
  s << "</svg>\n";
  out << s.str();
}

void write_svg(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  emit_svg(out, rows);
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace qkdps
