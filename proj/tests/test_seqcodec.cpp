#include <doctest.h>

#include "higman/embed2.hpp"
#include "higman/seqcodec.hpp"
#include "testutil.hpp"

using namespace higman;

namespace {

SeqTemplate zinfty_template() {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n");
  return encode_template(embed_presentation(p, EmbeddingVariant::Short).relators[0]);
}

const char* kAlpha =
    "(0)(1 24 7 22 6)(2 11 30 9 32 10 14 3 25 33 29 8)(4 12 15 27 31 28 20 18 17 34 21 5 13 16)(19 26)(23)";

}  // namespace

TEST_CASE("sequences are canonical") {
  CHECK(Seq(0, {0, 0, 3, 0}).str() == "(3)@2");
  CHECK(Seq(5, {}).is_zero());
  CHECK(Seq(5, {}).offset() == 0);
  CHECK(parse_seq("(3,1,-1,2)") == Seq(0, {3, 1, -1, 2}));
  CHECK(parse_seq("(5)@1") == Seq(1, {5}));
  CHECK(parse_seq("(0)").is_zero());
  CHECK(Seq(0, {1, -4}).max_abs() == 4);
}

TEST_CASE("exponent coding") {
  CHECK(encode_word(parse_word("b^3 c b^-1 c^2")) == Seq(0, {3, 1, -1, 2}));
  CHECK(encode_word(Word()).is_zero());
  CHECK(encode_word(parse_word("c^5")) == Seq(0, {0, 5}));
  CHECK(decode_seq(Seq(0, {3, 1, -1, 2})) == parse_word("b^3 c b^-1 c^2"));
  CHECK(decode_seq(Seq()).empty());
  CHECK(decode_seq(Seq(0, {0, 5})) == parse_word("c^5"));
  CHECK_THROWS_AS(decode_seq(Seq(-1, {1})), std::invalid_argument);
}

TEST_CASE("codec roundtrip on random words and codes") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    Word w = testutil::random_bc_word(rng, 40);
    CHECK(decode_seq(encode_word(w)) == w);
  }
  for (int t = 0; t < 1000; ++t) {
    // valid codes: every coordinate after index 0 is nonzero
    std::vector<int64_t> c(std::uniform_int_distribution<int>(0, 30)(rng));
    for (size_t i = 0; i < c.size(); ++i) {
      int64_t x = std::uniform_int_distribution<int64_t>(1, 5)(rng);
      c[i] = (rng() & 1) ? x : -x;
      if (i == 0 && rng() % 3 == 0) c[i] = 0;
    }
    Seq f(0, c);
    CHECK(encode_word(decode_seq(f)) == f);
  }
}

TEST_CASE("conjugator words") {
  auto w = conjugator_words(Seq(0, {5, 2, -1}));
  CHECK(w.a_f.str() == "c^-2 b c b^-2 c b^-5 a b^5 c^-1 b^2 c^-1 b^-1 c^2");
  CHECK(conjugator_words(Seq()).a_f == parse_word("a"));
  CHECK(conjugator_words(Seq(0, {0, 1})).a_f == parse_word("c^-1 b^-1 c a c^-1 b c"));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    std::vector<int64_t> c(std::uniform_int_distribution<int>(0, 8)(rng));
    for (auto& x : c) x = std::uniform_int_distribution<int64_t>(-3, 3)(rng);
    auto cw = conjugator_words(Seq(0, c));
    CHECK(cw.a_f == conjugate(parse_word("a"), cw.b_f));
    int a_count = 0;
    for (const auto& s : cw.a_f.syllables())
      if (s.gen.kind == Generator::Kind::APlain) {
        ++a_count;
        CHECK(s.exp == Affine(1));
      }
    CHECK(a_count == 1);
  }
}

TEST_CASE("A generators") {
  CHECK(emit_A_generators(std::vector<Seq>{Seq()}) == std::vector<Word>{parse_word("a")});
  CHECK(emit_A_generators(std::vector<Seq>{}).empty());
  auto g = emit_A_generators(std::vector<Seq>{Seq(0, {3, 1, -1, 2})});
  REQUIRE(g.size() == 1);
  CHECK(g[0] == parse_word("a^(b^3 (b^c) ((b^-1)^(c^2)) (b^2)^(c^3))"));
}

TEST_CASE("permutations") {
  Permutation p = parse_perm("(0 1)");
  CHECK(apply_perm(p, Seq(0, {3, 1, -1, 2})) == Seq(0, {1, 3, -1, 2}));
  CHECK(apply_perm(Permutation(), Seq(0, {3, 1})) == Seq(0, {3, 1}));
  Permutation a = parse_perm(kAlpha);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a(1) == 24);
  CHECK(parse_perm(a.str()) == a);
  Permutation t;
  for (auto [x, y] : a.transpositions()) t = t * Permutation::from_cycles({{x, y}});
  CHECK(t == a);
  CHECK_THROWS(Permutation::from_map({{0, 1}, {1, 1}}));
}

TEST_CASE("Z-infinity template and the reference grouping") {
  SeqTemplate t = zinfty_template();
  REQUIRE(t.coords.size() == 35);
  SeqTemplate g = apply_perm(parse_perm(kAlpha), t);
  CHECK(g.grouped_str() == "(11x1, 11x-1, 2xk, 3x-k, 3xl, 2x-l, 2x(k-l), (l-k))");
  Seq f12 = t.instantiate({{"k", 1}, {"l", 2}});
  CHECK(apply_perm(parse_perm(kAlpha), f12) == g.instantiate({{"k", 1}, {"l", 2}}));
  // k = l keeps positions, with zero coordinates
  CHECK(t.instantiate({{"k", 2}, {"l", 2}}).coords().size() == 35);
}

TEST_CASE("found groupings collect equal forms into runs") {
  SeqTemplate t = zinfty_template();
  Grouping gr = find_grouping_perm(t);
  CHECK(value_multiset(gr.grouped.coords) == value_multiset(t.coords));
  CHECK(runs_of(gr.grouped.coords).size() == value_multiset(t.coords).size());
  CHECK(apply_perm(gr.alpha, t) == gr.grouped);
  for (int k = 1; k <= 4; ++k)
    for (int l = 1; l <= 4; ++l) {
      std::map<std::string, int64_t> v{{"k", k}, {"l", l}};
      auto a = t.instantiate(v).window(0, 34), b = gr.grouped.instantiate(v).window(0, 34);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  SeqTemplate c;
  c.coords = {5, 5, 5};
  CHECK(find_grouping_perm(c).alpha.is_identity());
}

TEST_CASE("rational group grouping") {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel a[s]^s a[s-1]^-1 : s >= 2\n");
  SeqTemplate t = encode_template(embed_presentation(p, EmbeddingVariant::Short).relators[0]);
  auto ms = value_multiset(find_grouping_perm(t).grouped.coords);
  std::map<Affine, size_t> want{{1, 6}, {-1, 6}, {Affine::param("s"), 2}, {-Affine::param("s"), 2},
                                {Affine(1) - Affine::param("s"), 1}, {Affine::param("s") - Affine(1), 2}};
  CHECK(ms == want);
}

TEST_CASE("instantiate_all respects bounds") {
  SeqTemplate t = zinfty_template();
  CHECK(instantiate_all(t, 3).size() == 9);
}
