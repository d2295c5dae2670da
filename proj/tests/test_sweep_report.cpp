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

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cmath>
#include <map>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "error.hpp"
#include "finite_size.hpp"
#include "report.hpp"
#include "sweep.hpp"

using namespace qkdps;

namespace {

const std::vector<SweepRow>& small_sweep() {
  static const std::vector<SweepRow> rows = [] {
    SweepConfig cfg;
    cfg.distances_km = {0, 30, 60, 120};
    return run_sweep(cfg);
  }();
  return rows;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  emit_csv(s, rows);
  return s.str();
}

}  // namespace

TEST_CASE("mode names and block sizes") {
  for (Mode m : all_modes()) CHECK(parse_mode(mode_name(m)) == m);
  CHECK_THROWS_AS(parse_mode("ps_other"), Error);
  CHECK(effective_x(mode_block_spec(Mode::kPsBlock)) == 52);
  CHECK(effective_x(mode_block_spec(Mode::kPsGeneric)) == 484);
  CHECK(effective_x(mode_block_spec(Mode::kPsDecoy)) == 3510);
  CHECK_THROWS_AS(mode_block_spec(Mode::kIid), Error);
}

TEST_CASE("config parsing") {
  std::istringstream in(R"(
[protocol]
t = 0.25
p_z = 0.7
z_arm_fraction = 0.6
[sweep]
modes = iid, ps_block
distances_km = 0:25:100
seed = 42
threads = 2
[security]
eps_sec = 1e-10
f_ec = 1.2
[output]
csv = out.csv
)");
  const SweepConfig cfg = parse_config(in);
  CHECK(cfg.protocol.t == 0.25);
  CHECK(cfg.protocol.p_z == 0.7);
  CHECK(cfg.protocol.z_arm() == 0.6);
  CHECK(cfg.modes == std::vector<Mode>{Mode::kIid, Mode::kPsBlock});
  CHECK(cfg.distances_km == std::vector<double>{0, 25, 50, 75, 100});
  CHECK(cfg.seed == 42);
  CHECK(cfg.threads == 2);
  CHECK(cfg.eps_target_sec == 1e-10);
  CHECK(cfg.eps_target_cor == 1e-12);
  CHECK(cfg.f_ec == 1.2);
  CHECK(cfg.out_csv == "out.csv");
  CHECK(cfg.out_svg.empty());

  const SweepConfig def = [] {
    std::istringstream empty("");
    return parse_config(empty);
  }();
  CHECK(def.distances_km.size() == 20);
  CHECK(def.distances_km.back() == 190);
  CHECK(def.modes.size() == 5);

  auto bad = [](const char* text) {
    std::istringstream s(text);
    return parse_config(s);
  };
  CHECK_THROWS_AS(bad("[protocol]\nbogus = 1\n"), Error);
  CHECK_THROWS_AS(bad("[nowhere]\nt = 1\n"), Error);
  CHECK_THROWS_AS(bad("[protocol]\nt = abc\n"), Error);
  CHECK_THROWS_AS(bad("[protocol]\nt = 1.5\n"), Error);
  CHECK_THROWS_AS(bad("[sweep]\nmodes = iid, wrong\n"), Error);
  CHECK_THROWS_AS(bad("[sweep]\ndistances_km = 10:0:20\n"), Error);
  CHECK_THROWS_AS(bad("[security]\neps_sec = 0\n"), Error);
  CHECK_THROWS_AS(load_config("no/such/file.ini"), Error);

  CHECK(parse_distance_list("5, 7.5,10") == std::vector<double>{5, 7.5, 10});
  CHECK(parse_mode_list("iid,iid,ps_decoy") == std::vector<Mode>{Mode::kIid, Mode::kPsDecoy});
}

TEST_CASE("sweep rows") {
  const auto& rows = small_sweep();
  REQUIRE(rows.size() == 20);
  std::map<std::pair<double, std::string>, SweepRow> by;
  for (const auto& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.key_rate_per_second == doctest::Approx(r.key_length_bits / 3600.0));
    CHECK(r.key_length_bits >= 0.0);
    CHECK(r.secrecy_eps > 0.0);
    CHECK(r.secrecy_eps < 1.0);
    by[{r.distance_km, r.mode}] = r;
  }
  // Output keeps distance-major, mode-minor order.
  CHECK(rows[0].mode == "iid");
  CHECK(rows[4].mode == "ps_decoy");
  CHECK(rows[5].distance_km == 30);

  CHECK(by[{0, "iid"}].key_rate_per_second > 0.0);
  CHECK(by[{30, "sequential_iid"}].key_length_bits == 0.0);
  CHECK(by[{30, "sequential_iid"}].n_used == doctest::Approx(1.8e7));
  CHECK(by[{0, "ps_generic"}].x_used == 484);

  for (double d : {0.0, 30.0, 60.0, 120.0}) {
    CHECK(by[{d, "iid"}].key_length_bits >= by[{d, "ps_block"}].key_length_bits);
    CHECK(by[{d, "ps_block"}].key_length_bits >= by[{d, "ps_generic"}].key_length_bits);
    CHECK(by[{d, "ps_generic"}].key_length_bits >= by[{d, "ps_decoy"}].key_length_bits);
  }
  for (Mode m : all_modes()) {
    double prev = INFINITY;
    for (double d : {0.0, 30.0, 60.0, 120.0}) {
      const double r = by[{d, mode_name(m)}].key_rate_per_second;
      CHECK(r <= prev);
      prev = r;
    }
  }

  // A ps row is its own unlifted length minus the de Finetti and smoothing terms.
  for (const auto& r : rows) {
    if (r.x_used == 0) continue;
    const double l = variable_key_length(r.b_stat, r.leak, r.theta);
    const double log2_inv_tilde = 12 * std::log2(10.0) + r.log2_g;
    CHECK(r.key_length_bits == doctest::Approx(std::max(l - 2 * r.log2_g - 2 * log2_inv_tilde, 0.0)));
  }
}

TEST_CASE("sweep determinism") {
  SweepConfig cfg;
  cfg.distances_km = {0, 30, 60, 120};
  cfg.threads = 3;
  cfg.seed = 5;
  const std::string a = csv_of(run_sweep(cfg));
  CHECK(a == csv_of(small_sweep()));
}

TEST_CASE("CSV round trip") {
  const auto& rows = small_sweep();
  std::vector<SweepRow> with_odd = rows;
  with_odd.back().status = "error: x, \"quoted\"";
  std::istringstream in(csv_of(with_odd));
  const auto back = parse_csv(in);
  REQUIRE(back.size() == with_odd.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].distance_km == with_odd[i].distance_km);
    CHECK(back[i].mode == with_odd[i].mode);
    CHECK(back[i].n_used == with_odd[i].n_used);
    CHECK(back[i].log2_g == with_odd[i].log2_g);
    CHECK(back[i].entropy_lb_bits_per_round == with_odd[i].entropy_lb_bits_per_round);
    CHECK(back[i].b_stat == with_odd[i].b_stat);
    CHECK(back[i].leak == with_odd[i].leak);
    CHECK(back[i].theta == with_odd[i].theta);
    CHECK(back[i].key_length_bits == with_odd[i].key_length_bits);
    CHECK(back[i].key_rate_per_second == with_odd[i].key_rate_per_second);
    CHECK(back[i].secrecy_eps == with_odd[i].secrecy_eps);
    CHECK(back[i].status == with_odd[i].status);
  }
  const std::string text = csv_of(rows);
  CHECK(text.substr(0, text.find('\n')) ==
        "distance_km,mode,n_used,x_used,log2_g,entropy_lb_bits_per_round,b_stat,leak,theta,key_length_bits,"
        "key_rate_per_second,secrecy_eps,status");
  std::istringstream bad("distance_km,mode\n1,iid\n");
  CHECK_THROWS_AS(parse_csv(bad), Error);
  CHECK_THROWS_AS(write_csv("/nonexistent-dir/x.csv", rows), Error);
}

TEST_CASE("SVG output") {
  const auto& rows = small_sweep();
  std::ostringstream out;
  emit_svg(out, rows);
  const std::string svg = out.str();
  boost::property_tree::ptree tree;
  std::istringstream in(svg);
  CHECK_NOTHROW(boost::property_tree::read_xml(in, tree));
  size_t polylines = 0;
  for (size_t at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) ++polylines;
  // sequential_iid has key only at 0 km, so it still draws.
  CHECK(polylines == 5);

  std::vector<SweepRow> zero_mode = rows;
  for (auto& r : zero_mode)
    if (r.mode == "ps_decoy") r.key_rate_per_second = 0.0;
  std::ostringstream out2;
  emit_svg(out2, zero_mode);
  CHECK(out2.str().find("data-mode=\"ps_decoy\"") == std::string::npos);
  CHECK(out2.str().find("data-mode=\"ps_block\"") != std::string::npos);

  std::ostringstream empty;
  emit_svg(empty, {});
  std::istringstream in2(empty.str());
  CHECK_NOTHROW(boost::property_tree::read_xml(in2, tree));
}
