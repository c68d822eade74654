#include <doctest.h>

#include "higman/embed2.hpp"

using namespace higman;

TEST_CASE("short universal word at i = 1") {
  CHECK(universal_word(Affine(1), EmbeddingVariant::Short) == parse_word("b c^-1 b^-1 c^-1 b^-1 c b c b c b^-1"));
}

TEST_CASE("general universal word is a 13-syllable template") {
  Word w = universal_word(Affine::param("i"), EmbeddingVariant::General);
  CHECK(w.size() == 13);
  CHECK(w == parse_word("c^((b c^i)^2 b^-1) c^(-b)"));
  auto tail = std::vector<Syllable>(w.syllables().end() - 3, w.syllables().end());
  CHECK(Word(tail) == parse_word("b^-2 c^-1 b"));
  CHECK_THROWS_AS(universal_word(Affine(0), EmbeddingVariant::General), std::invalid_argument);
}

TEST_CASE("free abelian group embeds with the commutator of short words") {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n");
  Presentation t = embed_presentation(p, EmbeddingVariant::Short);
  REQUIRE(t.relators.size() == 1);
  CHECK(t.relators[0].body == parse_word("[c^((b c^k)^2 b^-1), c^((b c^l)^2 b^-1)]"));
  for (const auto& s : t.relators[0].body.syllables()) CHECK(s.gen.kind != Generator::Kind::AIndexed);
  Word r12 = t.relators[0].instantiate({{"k", 1}, {"l", 2}});
  CHECK(r12.size() == 35);
}

TEST_CASE("rational group relator in the short variant") {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel a[s]^s a[s-1]^-1 : s >= 2\n");
  Presentation t = embed_presentation(p, EmbeddingVariant::Short);
  CHECK(t.relators[0].instantiate({{"s", 3}}) ==
        parse_word("(c^3)^((b c^3)^2 b^-1) c^(-((b c^2)^2 b^-1))"));
}

TEST_CASE("Pruefer relators in the general variant") {
  Presentation p = parse_presentation(
      "gen a[i] : i >= 1\nrel a[1]^p : p in {2,3}\nrel a[s+1]^p a[s]^-1 : s >= 1; p in {2,3}\n");
  Presentation t = embed_presentation(fix_params(p, {{"p", 2}}), EmbeddingVariant::General);
  REQUIRE(t.relators.size() == 2);
  CHECK(t.relators[0].body == parse_word("(c^((b c)^2 b^-1) c^(-b))^2"));
  CHECK(t.relators[1].instantiate({{"s", 2}}) ==
        parse_word("(c^((b c^3)^2 b^-1) c^(-b))^2 c^b c^(-((b c^2)^2 b^-1))"));
}

TEST_CASE("empty presentation stays empty") {
  Presentation t = embed_presentation(parse_presentation("gen a[i] : i >= 1\n"), EmbeddingVariant::General);
  CHECK(t.relators.empty());
  CHECK(variant_name(parse_variant("short")) == "short");
  CHECK_THROWS(parse_variant("long"));
}
