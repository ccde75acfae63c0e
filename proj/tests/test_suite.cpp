#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>

#include "shrinker/output.hpp"
#include "shrinker/suite.hpp"

using namespace shrinker;

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.0}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV layout") {
  CsvTable t;
  t.header = {"a", "b"};
  t.add_row({1.0, 0.5});
  CHECK(t.str() == "a,b\n1,0.5\n");
}

TEST_CASE("SVG uses polylines and text only") {
  SvgPlot p;
  p.title = "x < y & z";
  p.series.push_back({"s", {0, 1, 2}, {0, 1, 4}});
  const std::string svg = p.str();
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<path") == std::string::npos);
  CHECK(svg.find("<image") == std::string::npos);
  CHECK(svg.find("x &lt; y &amp; z") != std::string::npos);
  std::set<std::string> tags;
  const std::regex tag("<([a-z]+)");
  for (std::sregex_iterator it(svg.begin(), svg.end(), tag), end; it != end; ++it) tags.insert((*it)[1]);
  CHECK(tags == std::set<std::string>{"polyline", "rect", "svg", "text"});
}

TEST_CASE("anchor index matches the shipped file") {
  std::ifstream in(std::string(SHRINKER_SOURCE_DIR) + "/docs/anchors.json");
  REQUIRE(in);
  const auto shipped = nlohmann::json::parse(in);
  for (const auto& [id, text] : anchor_index()) {
    REQUIRE(shipped.contains(id));
    CHECK(shipped[id]["description"] == text);
  }
  CHECK(shipped.size() == anchor_index().size());
  for (const auto& spec : check_registry()) CHECK(anchor_index().count(spec.anchor) == 1);
  std::ifstream adv(std::string(SHRINKER_SOURCE_DIR) + "/docs/advisory.json");
  REQUIRE(adv);
  CHECK(nlohmann::json::parse(adv) == nlohmann::json::object());
}

TEST_CASE("quick checks pass and serialize without wall time") {
  const auto result = run_suite({}, {"soliton", "gh-oracles", "volume"});
  REQUIRE(result.checks.size() == 3);
  CHECK(result.pass);
  for (const auto& c : result.checks) {
    const auto j = to_json(c.report);
    CHECK(j["status"] == "pass");
    CHECK_FALSE(j.contains("wall_time"));
    CHECK(anchor_index().count(j["anchor"]) == 1);
  }
  // same seed, same bytes
  const auto again = run_suite({}, {"gh-oracles"});
  const auto first = std::find_if(result.checks.begin(), result.checks.end(),
                                  [](const CheckResult& c) { return c.report.id == "gh-oracles"; });
  REQUIRE(first != result.checks.end());
  CHECK(to_json(again.checks[0].report).dump() == to_json(first->report).dump());
  CHECK_THROWS(run_suite({}, {"nope"}));
}
