#include <doctest.h>

#include "higman/demos.hpp"

using namespace higman;

namespace {

std::string value(const DemoReport& r, const std::string& key) {
  for (const auto& [k, v] : r.summary)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("parameter ranges") {
  ParamRanges r = parse_param_ranges("k=1..3,l=2,p=2..3");
  CHECK(r.at("k") == std::vector<int64_t>{1, 2, 3});
  CHECK(r.at("l") == std::vector<int64_t>{2});
  CHECK(r.at("p") == std::vector<int64_t>{2, 3});
  CHECK(parse_param_ranges("s=-1..1").at("s").size() == 3);
  CHECK_THROWS_AS(parse_param_ranges("k"), std::invalid_argument);
  CHECK_THROWS_AS(parse_param_ranges("k=3..1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_param_ranges("k=x"), std::invalid_argument);
}

TEST_CASE("presets") {
  auto names = demo_names();
  for (const char* n : {"zinfty", "q", "pruefer", "metabelian", "burnside"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}

TEST_CASE("rational demo passes and is deterministic") {
  DemoOptions o;
  o.params = parse_param_ranges("s=2..3");
  o.mutations = 2;
  DemoReport a = run_demo("q", o), b = run_demo("q", o);
  CHECK(a.ok);
  CHECK(a.text == b.text);
  CHECK(value(a, "status") == "pass");
  CHECK(value(a, "display_matches") == "1/1");
  CHECK(value(a, "members_accepted") == "2/2");
  CHECK(value(a, "mutants_rejected") == "4/4");
  CHECK(a.text.rfind("[summary]\n" + a.summary_text()) != std::string::npos);
  REQUIRE(a.families.size() == 1);
  size_t total = 0;
  for (const auto& [f, m] : a.families[0].runs) total += m;
  CHECK(total == a.families[0].tmpl.coords.size());
}

TEST_CASE("Z-infinity demo matches the display") {
  DemoOptions o;
  o.params = parse_param_ranges("k=1..2,l=1..2");
  o.mutations = 1;
  DemoReport r = run_demo("zinfty", o);
  CHECK(r.ok);
  REQUIRE(r.families.size() == 1);
  CHECK(r.families[0].display_match);
  CHECK(r.families[0].flags.empty());
  CHECK(r.families[0].tmpl.coords.size() == 35);
}

TEST_CASE("Burnside display is flagged, not failed") {
  DemoOptions o;
  o.params = parse_param_ranges("n=2,s=1..2");
  o.mutations = 1;
  DemoReport r = run_demo("burnside", o);
  CHECK(r.ok);
  REQUIRE(r.families.size() == 1);
  CHECK_FALSE(r.families[0].display_match);
  bool length_flag = false;
  for (const auto& f : r.families[0].flags) length_flag |= f.find("12n-11") != std::string::npos;
  CHECK(length_flag);
  CHECK(value(r, "discrepancy_flags") != "0");
}

TEST_CASE("membership can be skipped or sampled") {
  DemoOptions o;
  o.params = parse_param_ranges("p=2,s=1..3");
  o.membership = false;
  DemoReport r = run_demo("pruefer", o);
  CHECK(r.ok);
  CHECK(value(r, "members_accepted") == "0/0");
  CHECK(r.text.find("membership: off") != std::string::npos);
  o.membership = true;
  o.mutations = 0;
  o.instance_limit = 2;
  r = run_demo("pruefer", o);
  CHECK(r.ok);
  CHECK(r.text.find("checking 2 of 3 instances") != std::string::npos);
}

TEST_CASE("mutants leave the family") {
  SeqTemplate t;
  t.params = {ParamDecl{"k", 1, std::nullopt}};
  t.coords = {Affine::param("k"), -Affine::param("k")};
  Seq f = t.instantiate({{"k", 2}});
  auto m = family_mutants(t, f, 6, 1);
  CHECK(m.size() == 6);
  for (const auto& g : m) {
    CHECK(g != f);
    CHECK_FALSE((g.coords().size() == 2 && g.lo() == 0 && g.coords()[0] == -g.coords()[1] && g.coords()[0] >= 1));
  }
  CHECK(family_mutants(t, f, 6, 1) == m);
}
