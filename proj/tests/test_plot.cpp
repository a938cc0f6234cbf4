#include <catch_amalgamated.hpp>

#include <cmath>
#include <regex>

#include "attoclock/errors.hpp"
#include "attoclock/plot.hpp"
#include "xml_check.hpp"

using namespace attoclock;

namespace {

plot::Series series(std::string label, std::vector<double> f, std::vector<double> v, std::vector<bool> ext = {}) {
  if (ext.empty()) ext.assign(f.size(), false);
  return {std::move(label), std::move(f), std::move(v), std::move(ext)};
}

std::vector<std::string> polylines(const std::string& svg) {
  std::vector<std::string> out;
  const std::regex re("<polyline[^>]*/>");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

std::size_t point_pairs(const std::string& polyline) {
  const auto start = polyline.find("points=\"") + 8;
  const auto pts = polyline.substr(start, polyline.find('"', start) - start);
  return static_cast<std::size_t>(std::count(pts.begin(), pts.end(), ',')) ;
}

}  // namespace

TEST_CASE("single two-point curve", "[plot]") {
  const std::vector<plot::Series> s{series("tau", {0.05, 0.1}, {2.0, 1.0})};
  const auto svg = plot::render_svg(s, {});
  const auto lines = polylines(svg);
  REQUIRE(lines.size() == 1);
  CHECK(point_pairs(lines[0]) == 2);
  CHECK(lines[0].find("dasharray") == std::string::npos);
  CHECK(well_formed_xml(svg));
  CHECK(svg.find(">F (au)<") != std::string::npos);
  CHECK(svg.find(">delay (as)<") != std::string::npos);
}

TEST_CASE("extrapolated tail is dashed", "[plot]") {
  const std::vector<plot::Series> s{
      series("fit", {0.02, 0.04, 0.06, 0.08, 0.1}, {5, 3, 2, 1.5, 1.2}, {false, false, false, true, true})};
  const auto lines = polylines(plot::render_svg(s, {}));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].find("dasharray") == std::string::npos);
  CHECK(lines[1].find("stroke-dasharray") != std::string::npos);
  CHECK(point_pairs(lines[0]) == 3);
  CHECK(point_pairs(lines[1]) == 3);
}

TEST_CASE("legend lists curves in input order", "[plot]") {
  const std::vector<plot::Series> s{series("Z_eff=1", {0.05, 0.1}, {2.0, 1.0}),
                                    series("Z_eff=1.344", {0.05, 0.1}, {1.5, 0.5}),
                                    series("tau_barrier,exp & LC", {0.05, 0.1}, {1.7, 0.7})};
  plot::Options options;
  options.time_unit = TimeUnit::atomic;
  options.title = "barrier delay <He>";
  const auto svg = plot::render_svg(s, options);
  CHECK(well_formed_xml(svg));
  const auto a = svg.find(">Z_eff=1<");
  const auto b = svg.find(">Z_eff=1.344<");
  const auto c = svg.find(">tau_barrier,exp &amp; LC<");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  REQUIRE(c != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(count_of(svg, "<g class=\"legend\"") == 1);
  CHECK(svg.find(">delay (au)<") != std::string::npos);
  CHECK(polylines(svg).size() == 3);
  CHECK(plot::render_svg(s, options) == svg);
}

TEST_CASE("non-finite values break the line", "[plot]") {
  const std::vector<plot::Series> s{series("sweep", {0.1, 0.12, 0.14, 0.16, 0.18}, {3, 2, 1, NAN, NAN},
                                           {false, false, false, true, true})};
  const auto lines = polylines(plot::render_svg(s, {}));
  REQUIRE(lines.size() == 1);
  CHECK(point_pairs(lines[0]) == 3);

  const std::vector<plot::Series> single{series("dot", {0.1}, {1.0})};
  const auto svg = plot::render_svg(single, {});
  CHECK(polylines(svg).empty());
  CHECK(count_of(svg, "<circle") == 1);

  const std::vector<plot::Series> nothing{series("nan", {0.1}, {NAN})};
  CHECK_THROWS_AS(plot::render_svg(nothing, {}), DomainError);
}

TEST_CASE("tick placement", "[plot]") {
  CHECK(plot::nice_ticks(0.0, 0.12, 6) == std::vector<double>{0.0, 0.02, 0.04, 0.06, 0.08, 0.1, 0.12});
  const auto t = plot::nice_ticks(0.0, 10.0, 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 10.0);
  CHECK(plot::nice_ticks(1.0, 1.0).empty());
}

TEST_CASE("table input", "[plot]") {
  const auto model = plot::parse_table(
      "# time_unit: au\nf_au,delta_z,d_b,tau_a,tau_dion,tau_db,tau_td,tau_ti,xi,lambda\n"
      "0.06,0.6,10,0.5,1.1,0.8,1.9,0.3,2,0.7\n0.12,0,0,0.5,0.5,0,0.5,0.5,1,0\n",
      "model");
  CHECK(model.time_unit == TimeUnit::atomic);
  REQUIRE(model.series.size() == 5);
  CHECK(model.series[0].label == "tau_a");
  CHECK(model.series[2].label == "tau_db");

  const std::vector<std::string> cols{"tau_db"};
  const auto picked = plot::parse_table("f_au,tau_db,xi\n0.1,1,2\n0.2,0.5,1\n", "x", cols);
  REQUIRE(picked.series.size() == 1);
  CHECK(picked.series[0].values == std::vector<double>{1, 0.5});

  const auto curve = plot::parse_table("f_au,value,extrapolated\n0.1,1,0\n0.2,2,1\n", "my curve");
  REQUIRE(curve.series.size() == 1);
  CHECK(curve.series[0].label == "my curve");
  CHECK(curve.series[0].extrapolated == std::vector<bool>{false, true});
  CHECK(curve.time_unit == TimeUnit::attosecond);

  const std::vector<std::string> missing{"nope"};
  CHECK_THROWS_AS(plot::parse_table("f_au,a\n0.1,1\n", "x", missing), ParseError);
  CHECK_THROWS_AS(plot::parse_table("x,a\n0.1,1\n", "x"), ParseError);
  CHECK_THROWS_AS(plot::parse_table("f_au,a\n0.1,zz\n", "x"), ParseError);
  CHECK_THROWS_AS(plot::parse_table("f_au,a\n", "x"), EmptyDataset);
  CHECK_THROWS_AS(plot::parse_table("", "x"), ParseError);
}
