#include <doctest.h>

#include "higman/affine.hpp"
#include "higman/words.hpp"
#include "testutil.hpp"

using namespace higman;

TEST_CASE("affine forms parse, print and evaluate") {
  CHECK(parse_affine("k-l").str() == "k-l");
  CHECK(parse_affine("s+1").eval({{"s", 4}}) == 5);
  CHECK(parse_affine("1-s").eval({{"s", 3}}) == -2);
  CHECK(parse_affine("-2").is_constant());
  CHECK((parse_affine("k") - parse_affine("k")).is_zero());
  CHECK_THROWS_AS(parse_affine("k*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_affine("k").eval({}), std::invalid_argument);
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), OverflowError);
}

TEST_CASE("free cancellation and commutator identities") {
  CHECK(parse_word("b c c^-1 b") == parse_word("b^2"));
  Word x = parse_word("b c^3 b^-1");
  CHECK(parse_word("[b c^3 b^-1, b c^3 b^-1]").empty());
  CHECK(commutator(x, x).empty());
  CHECK(Word().inverse().empty());
  CHECK(conjugate(parse_word("b"), parse_word("c^3")) == parse_word("c^-3 b c^3"));
  CHECK(parse_word("b^c") == parse_word("c^-1 b c"));
}

TEST_CASE("universal word at i = 1 parses to its reduced form") {
  CHECK(parse_word("c^((b c^1)^2 b^-1) c^(-b)") == parse_word("b c^-1 b^-1 c^-1 b^-1 c b c b c b^-2 c^-1 b"));
}

TEST_CASE("symbolic exponents merge as affine forms") {
  Word w = parse_word("c^k c^-l");
  REQUIRE(w.size() == 1);
  CHECK(w.syllables()[0].exp == parse_affine("k-l"));
  CHECK(parse_word("c^k c^-k").empty());
  CHECK(w.substitute_params({{"k", 2}, {"l", 2}}).empty());
}

TEST_CASE("random word properties") {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 1000; ++t) {
    Word u = testutil::random_word(rng, 40), v = testutil::random_word(rng, 40);
    CHECK((u * u.inverse()).empty());
    CHECK((u * v).inverse() == v.inverse() * u.inverse());
    CHECK(Word(u.syllables()) == u);  // reduction is idempotent
    CHECK(parse_word(u.str()) == u);
    auto hom = [](const Generator& g) -> std::optional<Word> {
      if (g.kind == Generator::Kind::AIndexed) return parse_word("b c^2 b^-1");
      return Word::gen(g);
    };
    CHECK(substitute(u * v, hom) == substitute(u, hom) * substitute(v, hom));
  }
}

TEST_CASE("substitution kills the identity") {
  auto hom = [](const Generator&) -> std::optional<Word> { return parse_word("b c"); };
  CHECK(substitute(parse_word("a[k] a[k]^-1"), hom).empty());
}

TEST_CASE("presentations parse with constraints") {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n# comment\n");
  REQUIRE(p.relators.size() == 1);
  CHECK(p.has_family);
  CHECK(p.relators[0].params.size() == 2);
  Presentation q = parse_presentation("gen a[i] : i >= 1\nrel a[1]^p : p in {2,3}\n");
  REQUIRE(q.relators[0].params.size() == 1);
  CHECK(q.relators[0].params[0].values == std::vector<int64_t>{2, 3});
  CHECK(q.relators[0].params[0].admits(3));
  CHECK_FALSE(q.relators[0].params[0].admits(4));
  Presentation f = fix_params(q, {{"p", 2}});
  CHECK(f.relators[0].body == parse_word("a[1]^2"));
}

TEST_CASE("parse errors report an offset") {
  CHECK_THROWS_AS(parse_word("b^("), ParseError);
  CHECK_THROWS_AS(parse_word("x"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel [a[k],a[l]] : k >= \n"), ParseError);
}

TEST_CASE("template exponents are restricted") {
  CHECK_NOTHROW(check_template_form(parse_affine("k-l"), "test"));
  CHECK_NOTHROW(check_template_form(parse_affine("s+1"), "test"));
  CHECK_THROWS(check_template_form(parse_affine("2k"), "test"));
  CHECK_THROWS(check_template_form(parse_affine("k+l"), "test"));
}
