#include <doctest.h>

#include <set>

#include "higman/embed2.hpp"
#include "higman/synth.hpp"

using namespace higman;

namespace {

SeqTemplate encoded(const char* text) {
  return encode_template(embed_presentation(parse_presentation(text), EmbeddingVariant::Short).relators[0]);
}

const char* kZinf = "gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n";

}  // namespace

TEST_CASE("every grouped coordinate is settled by exactly one step") {
  Grouping g = find_grouping_perm(encoded(kZinf));
  SynthResult r = synth_from_grouped_template(g.grouped, g.alpha);
  CHECK(r.length == 35);
  std::multiset<int64_t> seen;
  for (const auto& s : r.steps) seen.insert(s.coords.begin(), s.coords.end());
  for (int64_t i = 0; i < 35; ++i) CHECK_MESSAGE(seen.count(i) == 1, "index " << i);
  CHECK(seen.size() == 35);
  CHECK(r.log().find("lowering") != std::string::npos);
  CHECK(r.steps.back().lemma == "lowering");
}

TEST_CASE("synthesized Z-infinity expression accepts its relators") {
  SeqTemplate t = encoded(kZinf);
  Grouping g = find_grouping_perm(t);
  SynthResult r = synth_from_grouped_template(g.grouped, g.alpha);
  Window W = r.window_for(2);
  for (int64_t k = 1; k <= 2; ++k)
    for (int64_t l = 1; l <= 2; ++l) {
      Seq f = t.instantiate({{"k", k}, {"l", l}});
      CHECK(member(r.expr, f, W).member);
      CHECK(member(r.grouped_expr, g.grouped.instantiate({{"k", k}, {"l", l}}), W).member);
      std::vector<int64_t> c = f.window(0, 34);
      c[5] += 1;
      CHECK_FALSE(member(r.expr, Seq(0, c), W).member);
    }
}

TEST_CASE("constant template") {
  SeqTemplate t;
  t.coords = {5, 5};
  SynthResult r = synth_from_grouped_template(t);
  CHECK(eval_enum(r.expr, {0, 9}, 5) == SeqSet{Seq(0, {5, 5})});
}

TEST_CASE("rational relators need opposite pairs and triples") {
  SeqTemplate t = encoded("gen a[i] : i >= 1\nrel a[s]^s a[s-1]^-1 : s >= 2\n");
  Grouping g = find_grouping_perm(t);
  SynthResult r = synth_from_grouped_template(g.grouped, g.alpha);
  bool sign = false, replace = false;
  for (const auto& s : r.steps) {
    sign |= s.lemma.rfind("opposite pairs", 0) == 0;
    replace |= s.lemma.rfind("replace coordinate", 0) == 0;
  }
  CHECK(sign);
  CHECK(replace);
  Seq f = t.instantiate({{"s", 2}});
  CHECK(member(r.expr, f, r.window_for(f.max_abs())).member);
}

TEST_CASE("unsupported forms are named") {
  SeqTemplate t;
  t.params = {ParamDecl{"k", 1, std::nullopt}};
  t.coords = {Affine::param("k") + Affine::param("l")};
  CHECK_THROWS_WITH_AS(synth_from_grouped_template(t), doctest::Contains("index 0"), std::invalid_argument);
  t.params.push_back(ParamDecl{"l", 1, std::nullopt});
  CHECK_THROWS_WITH_AS(synth_from_grouped_template(t), doctest::Contains("never occurs alone"), std::invalid_argument);
}
