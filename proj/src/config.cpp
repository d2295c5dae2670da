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

#include "config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "error.hpp"

namespace qkdps {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& raw, const std::string& what) {
  const std::string s = boost::algorithm::trim_copy(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::kParse, what + ": expected a number, got '" + raw + "'");
  return v;
}

long long to_integer(const std::string& raw, const std::string& what) {
  const std::string s = boost::algorithm::trim_copy(raw);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::kParse, what + ": expected an integer, got '" + raw + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(", \t"), boost::algorithm::token_compress_on);
  std::vector<std::string> out;
  for (auto& p : parts)
    if (!p.empty()) out.push_back(p);
  return out;
}

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g{
      {"protocol",
       {"t", "p_z", "attenuation_db_per_km", "test_fraction", "duration_s", "source_rate_hz", "cutoff_photons",
        "detector_efficiency", "z_arm_fraction", "crossclick_c"}},
      {"sweep", {"modes", "distances_km", "seed", "threads", "n_total"}},
      {"security", {"eps_sec", "eps_cor", "f_ec"}},
      {"entropy", {"max_iterations", "gap_target", "relative_gap_target", "perturbation"}},
      {"output", {"csv", "svg"}},
  };
  return g;
}

}  // namespace

std::vector<Mode> parse_mode_list(const std::string& text) {
  std::vector<Mode> modes;
  for (const auto& name : split_list(text)) {
    const Mode m = parse_mode(name);
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
  }
  require(!modes.empty(), ErrorCode::kParse, "mode list is empty");
  return modes;
}

std::vector<double> parse_distance_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(":"));
    require(parts.size() == 3, ErrorCode::kParse, "distance range must be start:step:stop");
    const double start = to_double(parts[0], "distance start");
    const double step = to_double(parts[1], "distance step");
    const double stop = to_double(parts[2], "distance stop");
    require(step > 0.0 && stop >= start, ErrorCode::kParse, "distance range must have step > 0 and stop >= start");
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    require(count <= 100000, ErrorCode::kParse, "distance range has too many points");
    for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    for (const auto& s : split_list(text)) out.push_back(to_double(s, "distance"));
  }
  require(!out.empty(), ErrorCode::kParse, "distance list is empty");
  return out;
}

SweepConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::kParse, std::string("config: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    auto it = grammar().find(section);
    if (it == grammar().end()) {
      if (body.empty()) fail(ErrorCode::kParse, "config: key '" + section + "' outside a section");
      fail(ErrorCode::kParse, "config: unknown section [" + section + "]");
    }
    for (const auto& kv : body)
      if (!it->second.count(kv.first))
        fail(ErrorCode::kParse, "config: unknown key '" + kv.first + "' in [" + section + "]");
  }

  SweepConfig cfg;
  auto get = [&](const char* path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };
  auto num = [&](const char* path, double& dst) {
    if (auto v = get(path)) dst = to_double(*v, path);
  };
  auto opt_num = [&](const char* path, std::optional<double>& dst) {
    if (auto v = get(path)) dst = to_double(*v, path);
  };

  ThreeStateConfig& p = cfg.protocol;
  num("protocol.t", p.t);
  num("protocol.p_z", p.p_z);
  num("protocol.attenuation_db_per_km", p.attenuation_db_per_km);
  num("protocol.test_fraction", p.test_fraction);
  num("protocol.duration_s", p.duration_s);
  num("protocol.source_rate_hz", p.source_rate_hz);
  if (auto v = get("protocol.cutoff_photons")) p.cutoff_photons = static_cast<int>(to_integer(*v, "cutoff_photons"));
  num("protocol.detector_efficiency", p.detector_efficiency);
  opt_num("protocol.z_arm_fraction", p.z_arm_fraction);
  opt_num("protocol.crossclick_c", p.crossclick_c);

  if (auto v = get("sweep.modes")) cfg.modes = parse_mode_list(*v);
  if (auto v = get("sweep.distances_km")) cfg.distances_km = parse_distance_list(*v);
  if (auto v = get("sweep.seed")) {
    const long long s = to_integer(*v, "seed");
    require(s >= 0, ErrorCode::kParse, "config: seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("sweep.threads")) cfg.threads = static_cast<int>(to_integer(*v, "threads"));
  num("sweep.n_total", cfg.n_total);

  num("security.eps_sec", cfg.eps_target_sec);
  num("security.eps_cor", cfg.eps_target_cor);
  num("security.f_ec", cfg.f_ec);

  if (auto v = get("entropy.max_iterations"))
    cfg.entropy.max_iterations = static_cast<int>(to_integer(*v, "max_iterations"));
  num("entropy.gap_target", cfg.entropy.gap_target);
  num("entropy.relative_gap_target", cfg.entropy.relative_gap_target);
  num("entropy.perturbation", cfg.entropy.perturbation);

  if (auto v = get("output.csv")) cfg.out_csv = boost::algorithm::trim_copy(*v);
  if (auto v = get("output.svg")) cfg.out_svg = boost::algorithm::trim_copy(*v);

  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config '" + path + "'");
  return parse_config(in);
}

}  // namespace qkdps
