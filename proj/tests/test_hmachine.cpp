#include <doctest.h>

#include "higman/hmachine.hpp"

using namespace higman;

namespace {

SeqSet sym(const ExprPtr& e, const Window& W, int64_t M) { return truncate(expand(eval_symbolic(e, W), M), W, M); }

}  // namespace

TEST_CASE("singletons") {
  CHECK(eval_enum(hm::singleton(1), {0, 1}, 3) == SeqSet{Seq(0, {1})});
  for (int64_t n = -3; n <= 3; ++n) {
    BuilderSpec s;
    s.values = {n};
    CHECK(verify_builder(s, {-1, 3}, 4, true).ok());
  }
  CHECK(sym(hm::constants({2, -1, 3}), {0, 4}, 3) == SeqSet{Seq(0, {2, -1, 3})});
}

TEST_CASE("sign sets") {
  BuilderSpec s;
  s.kind = BuilderKind::Sign;
  CHECK(oracle_set(s, {0, 0}, 3) == SeqSet{Seq(0, {1}), Seq(0, {2}), Seq(0, {3})});
  for (auto k : {SignKind::Plus, SignKind::Minus, SignKind::PlusMinus})
    for (int64_t t = -1; t <= 1; ++t) {
      s.sign = k;
      s.threshold = t;
      CHECK_MESSAGE(verify_builder(s, {0, 10}, 4, true).ok(), s.describe());
    }
}

TEST_CASE("duplication") {
  BuilderSpec s;
  s.kind = BuilderKind::Duplicate;
  s.operand = operand_constants({{5}});
  CHECK(oracle_set(s, {0, 3}, 6) == SeqSet{Seq(0, {5, 5})});
  s.operand = operand_singletons_range(-3, 3);
  CHECK(verify_builder(s, {-1, 4}, 4, true).ok());
  CHECK(sym(hm::dup_first(hm::constants({1, 2}), 0), {0, 3}, 3) == SeqSet{Seq(0, {1, 1, 2})});
}

TEST_CASE("opposite pairs and the liberation index") {
  BuilderSpec s;
  s.kind = BuilderKind::OppositePairs;
  CHECK(verify_builder(s, {0, 19}, 4, true).ok());
  s.all_integers = true;
  CHECK(verify_builder(s, {0, 19}, 4, true).ok());
  CHECK(member(hm::opposite_pairs(), Seq(0, {3, -3}), {0, 19}, {}, 0).member);
  CHECK(hm::opposite_pairs_liberation_index() == 1);
  // the alternative index 2 does not meet the contract
  s.all_integers = false;
  SeqSet want = truncate(oracle_set(s, {0, 19}, 4), {0, 19}, 4);
  CHECK(sym(hm::opposite_pairs_variant(1), {0, 19}, 4) == want);
  CHECK(sym(hm::opposite_pairs_variant(2), {0, 19}, 4) != want);
}

TEST_CASE("arithmetic triples and the extract positions") {
  ExprPtr P = operand_constants({{6, 2}, {3, 9}}).expr;
  SeqSet got = sym(hm::triples(P, ArithMode::Diff), {0, 79}, 9);
  CHECK(got.count(Seq(0, {6, 2, 4})));
  CHECK(got.count(Seq(0, {3, 9, -6})));
  CHECK(got.size() == 2);
  CHECK(sym(hm::triples(P, ArithMode::Sum), {0, 95}, 12) == SeqSet{Seq(0, {6, 2, 8}), Seq(0, {3, 9, 12})});
  CHECK(hm::triple_extract_positions() == std::vector<int64_t>{0, 1, 3});
  ExprPtr Q = operand_constants({{2, 1}, {1, 2}}).expr;
  SeqSet want{Seq(0, {2, 1, 1}), Seq(0, {1, 2, -1})};
  CHECK(sym(hm::triples_variant(Q, {0, 1, 3}), {0, 31}, 3) == want);
  CHECK(sym(hm::triples_variant(Q, {0, 1, 2}), {0, 31}, 3) != want);
}

TEST_CASE("replace coordinate and scaled pairs") {
  BuilderSpec s;
  s.kind = BuilderKind::ReplaceCoord;
  s.operand = operand_constants({{2, 1, 0}, {1, 3, 7}});
  s.i = 0;
  s.j = 1;
  s.k = 2;
  CHECK(oracle_set(s, {0, 5}, 4) == SeqSet{Seq(0, {2, 1, 1}), Seq(0, {1, 3, -2})});
  CHECK(verify_builder(s, {0, 40}, 7, true).ok());
  s.mode = ArithMode::Sum;
  CHECK(verify_builder(s, {0, 40}, 7, true).ok());
  BuilderSpec q;
  q.kind = BuilderKind::ScaledPairs;
  q.k = 2;
  q.operand = operand_singletons_range(1, 2);
  CHECK(oracle_set(q, {0, 3}, 4) == SeqSet{Seq(0, {1, 2}), Seq(0, {2, 4})});
  CHECK(verify_builder(q, {0, 40}, 4, true).ok());
}

TEST_CASE("sums of shifted blocks") {
  BuilderSpec s;
  s.kind = BuilderKind::Sum;
  s.parts = {{operand_singletons_range(1, 2), 0}, {operand_constants({{-1, 4}}), 2}};
  CHECK(verify_builder(s, {0, 9}, 4, true).ok());
  CHECK(verify_builder(s, {0, 9}, 4, false).ok());
  // the singleton 4 at index 3 builds its witness chain past index 5
  CHECK_FALSE(verify_builder(s, {0, 5}, 4, false).ok());
}

TEST_CASE("lowered builders agree") {
  for (ExprPtr e : {hm::sign_plus(), hm::dup_last(hm::singleton(2), 0), hm::other_than(1)}) {
    Window W{0, 3};
    CHECK(eval_enum(e, W, 3) == eval_enum(lower(e), W, 3));
  }
}

TEST_CASE("builder specs parse from text") {
  CHECK(parse_builder_spec("singletons:(1,-2)").values == std::vector<int64_t>{1, -2});
  BuilderSpec a = parse_builder_spec("sign:+-,k=2");
  CHECK(a.sign == SignKind::PlusMinus);
  CHECK(a.threshold == 2);
  CHECK(parse_builder_spec("opposite:all").all_integers);
  BuilderSpec t = parse_builder_spec("triples:sum, operand=pairs(1..3)");
  CHECK(t.mode == ArithMode::Sum);
  CHECK(t.operand.members(5).size() == 9);
  BuilderSpec r = parse_builder_spec("replace:i=0,j=1,k=2,diff,operand=set((1,2,0);(3,1,0))");
  CHECK(r.k == 2);
  CHECK(r.operand.members(3).size() == 2);
  BuilderSpec u = parse_builder_spec("sum:range(0..2)@0,range(1..2)@2");
  CHECK(u.parts.size() == 2);
  CHECK(parse_builder_spec("scaled:s=3,operand=range(0..2)").k == 3);
  CHECK(parse_builder_spec("duplicate:k=0,operand=pospairs").operand.members(2).size() == 4);
  CHECK_THROWS_AS(parse_builder_spec("nope"), std::invalid_argument);
  CHECK_THROWS_AS(parse_builder_spec("sign:*"), std::invalid_argument);
  CHECK_THROWS_AS(parse_builder_spec("triples:operand=pospairs"), std::invalid_argument);
  CHECK_THROWS_AS(parse_builder_spec("duplicate:k=x,operand=pospairs"), std::invalid_argument);
}

TEST_CASE("verify reports counterexamples") {
  auto r = verify_builder(parse_builder_spec("sign:+-,k=1"), {0, 2}, 3, true);
  CHECK_FALSE(r.ok());  // the chain for n <= -2 needs more room than [0,2]
  CHECK(r.str().find("counterexample missing: (-3)") != std::string::npos);
  EvalOptions o;
  o.window.witness_slack = 1;
  CHECK(verify_builder(parse_builder_spec("sign:+-,k=1"), {0, 2}, 3, true, o).ok());
}
