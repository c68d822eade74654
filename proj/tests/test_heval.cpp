#include <doctest.h>

#include <algorithm>
#include <iterator>

#include "corpus.hpp"
#include "higman/heval.hpp"

using namespace higman;
using namespace higman::ex;

TEST_CASE("base sets") {
  PatternSet s = eval_symbolic(S(), {0, 1});
  REQUIRE(s.patterns.size() == 1);
  CHECK(s.str() == "(t, t+1)@[0,1]\n");
  PatternSet ts = eval_symbolic(tau(S()), {0, 1});
  REQUIRE(ts.patterns.size() == 1);
  CHECK(ts.contains(Seq(0, {5, 4})));
  CHECK_FALSE(ts.contains(Seq(0, {4, 5})));
  CHECK(eval_symbolic(Z(), {-2, 2}).str() == "(0, 0, 0, 0, 0)@[-2,2]\n");
}

TEST_CASE("enumerative evaluator examples") {
  CHECK(eval_enum(iota(tau(S()), zeta(Z())), {0, 1}, 3) == SeqSet{Seq(0, {1})});
  for (Window W : {Window{0, 3}, Window{-2, 5}}) CHECK(eval_enum(omega(2, S()), W, 3).empty());
  SeqSet r = eval_enum(rho(S()), {-1, 0}, 2);
  SeqSet want;
  // reflection: f(-1) = g(1) = n+1, f(0) = g(0) = n
  for (int64_t n = -2; n <= 1; ++n) want.insert(Seq(-1, {n + 1, n}));
  CHECK(r == want);
}

TEST_CASE("symbolic and enumerative evaluation agree on the corpus") {
  for (const auto& t : corpus::expressions()) {
    ExprPtr e = parse_expr(t);
    for (Window W : {Window{-2, 3}, Window{0, 5}, Window{-3, -1}}) {
      PatternSet ps = eval_symbolic(e, W);
      SeqSet sym = expand(ps, 3);
      CHECK_MESSAGE(sym == eval_enum(e, W, 3), t << " on " << W.str());
      // membership coherence
      for (const auto& f : eval_enum(e, W, 2)) CHECK(member(e, f, W, {}, 0).member);
      Seq out(W.lo, std::vector<int64_t>(static_cast<size_t>(W.width()), 4));
      CHECK(member(e, out, W, {}, 0).member == ps.contains(out));
    }
  }
}

TEST_CASE("set algebra") {
  ExprPtr a = parse_expr("(ups S (tau S))"), b = parse_expr("(sigma^ -1 (zeta-at 1 Z))");
  Window W{-2, 2};
  SeqSet A = eval_enum(a, W, 3), B = eval_enum(b, W, 3), I, U;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::inserter(I, I.end()));
  std::set_union(A.begin(), A.end(), B.begin(), B.end(), std::inserter(U, U.end()));
  CHECK(eval_enum(iota(a, b), W, 3) == I);
  CHECK(eval_enum(ups(a, b), W, 3) == U);
}

TEST_CASE("membership answers with a trace") {
  auto r = member(S(), Seq(0, {4, 5}), {0, 1});
  CHECK(r.member);
  CHECK_FALSE(r.trace.empty());
  CHECK_FALSE(member(S(), Seq(0, {4, 6}), {0, 1}).member);
  CHECK_THROWS_AS(member(S(), Seq(0, {1, 2, 3}), {0, 1}), WindowTooSmall);
}

TEST_CASE("caps are enforced") {
  EvalOptions o;
  o.enum_budget = 10;
  CHECK_THROWS_AS(eval_enum(zeta(S()), {0, 5}, 4, o), CapExceeded);
}

TEST_CASE("monotone liberation") {
  ExprPtr e = parse_expr("(pi (tau S))");
  Window inner{0, 2};
  SeqSet small = eval_enum(e, inner, 3);
  SeqSet big;
  for (const auto& f : eval_enum(e, {0, 4}, 3))
    if (f.is_zero() || f.hi() <= inner.hi) big.insert(f);
  CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
}

TEST_CASE("stabilize reports") {
  auto z = stabilize(Z(), {0}, {{{0, 1}, 2}, {{0, 3}, 2}});
  CHECK(z.stable);
  auto e = stabilize(iota(S(), sigma(S())), {0, 1}, {{{0, 2}, 2}, {{0, 4}, 3}});
  CHECK(e.stable);
  for (const auto& st : e.steps) CHECK(st.values.empty());
  CHECK_THROWS(stabilize(Z(), {0}, {{{0, 3}, 2}, {{0, 1}, 2}}));
}
