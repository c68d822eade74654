#include <doctest.h>

#include "corpus.hpp"
#include "higman/expr.hpp"
#include "higman/heval.hpp"

using namespace higman;
using namespace higman::ex;

TEST_CASE("expression text roundtrips") {
  for (const auto& t : corpus::expressions()) {
    ExprPtr e = parse_expr(t);
    CHECK(expr_equal(parse_expr(print_expr(e)), e));
  }
  CHECK(parse_expr("Z")->op == Op::Z);
  ExprPtr n1 = parse_expr("(iota (tau S) (zeta Z))");
  CHECK(expr_equal(n1, iota(tau(S()), zeta(Z()))));
  CHECK(expr_equal(parse_expr("(omega 2 (ups (zeta-at 1 Z) (tau S)))"), omega(2, ups(zeta_at(1, Z()), tau(S())))));
  CHECK_THROWS_AS(parse_expr("(iota S)"), ParseError);
  CHECK_THROWS_AS(parse_expr("(frob S)"), ParseError);
}

TEST_CASE("shared subexpressions print through let") {
  ExprPtr x = sum(S(), sigma_pow(3, S()));
  ExprPtr e = iota(x, x);
  std::string text = print_expr(e);
  CHECK(text.find("(let") == 0);
  CHECK(expr_equal(parse_expr(text), e));
  CHECK(expr_dag_size(e) < expr_tree_size(e));
}

TEST_CASE("size walks survive very deep trees") {
  ExprPtr e = S();
  for (int i = 0; i < 200000; ++i) e = sigma(e);
  CHECK(expr_dag_size(e) == 200001);
  CHECK(expr_tree_size(e) == 200001);
}

TEST_CASE("lowering rules") {
  CHECK(expr_equal(lower(sigma_pow(-1, S())), rho(sigma(rho(S())))));
  CHECK(expr_equal(lower(zeta_at(3, S())),
                   sigma(sigma(sigma(zeta(rho(sigma(sigma(sigma(rho(S())))))))))));
  CHECK(expr_equal(lower(iota_n({S(), tau(S()), Z()})), iota(iota(S(), tau(S())), Z())));
  CHECK_THROWS(sum(S(), S()));
}

TEST_CASE("lowering is core-only and idempotent") {
  for (const auto& e : corpus::auxiliary_cases()) {
    ExprPtr l = lower(e);
    CHECK(is_core_only(l));
    CHECK(expr_equal(lower(l), l));
  }
}

TEST_CASE("child windows") {
  CHECK(child_windows(*theta(S()), {0, 3}, {}) == std::vector<Window>{{0, 6}});
  CHECK(child_windows(*sigma_pow(2, S()), {0, 5}, {}) == std::vector<Window>{{-2, 3}});
  CHECK(child_windows(*omega(4, S()), {0, 9}, {}) == std::vector<Window>{{0, 3}});
  CHECK(parse_window("-2:5") == Window{-2, 5});
  CHECK_THROWS(parse_window("5:2"));
}

TEST_CASE("lowering preserves meaning on a sample of windows") {
  auto cases = corpus::auxiliary_cases();
  for (size_t c = 0; c < cases.size(); c += 7) {
    ExprPtr l = lower(cases[c]);
    for (Window W : {Window{-2, 2}, Window{0, 3}, Window{-4, -1}})
      CHECK(eval_enum(cases[c], W, 3) == eval_enum(l, W, 3));
  }
}

TEST_CASE("involutions and inverse shift") {
  for (const auto& t : {"S", "(tau S)", "(zeta-at 1 Z)"}) {
    ExprPtr e = parse_expr(t);
    Window W{-2, 2};
    CHECK(eval_enum(rho(rho(e)), W, 3) == eval_enum(e, W, 3));
    CHECK(eval_enum(tau(tau(e)), W, 3) == eval_enum(e, W, 3));
    CHECK(eval_enum(sigma(sigma_pow(-1, e)), W, 3) == eval_enum(e, W, 3));
  }
}
