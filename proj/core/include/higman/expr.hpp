#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "higman/seqcodec.hpp"

namespace higman {

enum class Op {
  // leaves
  Z, S,
  // core operations
  Iota, Ups, Rho, Sigma, Tau, Theta, Zeta, Pi, Omega,
  // auxiliary operations
  SigmaPow, ZetaAt, ZetaSet, PiPrime, PiAt, PiPrimeAt, TauSwap, Perm, Eps, Sum, IotaN, UpsN,
  // placeholder used only inside lowering templates
  Hole,
};

bool is_core(Op op);
bool is_leaf(Op op);
const char* op_keyword(Op op);

struct Window {
  int64_t lo = 0, hi = 0;
  int64_t width() const { return hi - lo + 1; }
  bool contains(int64_t i) const { return lo <= i && i <= hi; }
  bool operator==(const Window& o) const = default;
  auto operator<=>(const Window& o) const = default;
  std::string str() const { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }
};
Window hull(const Window& a, const Window& b);
Window parse_window(const std::string& text);  // "lo:hi"

// nullopt means "not known to be finite".
using Support = std::optional<std::set<int64_t>>;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op;
  int64_t a = 0;  // omega m, sigma^ i, zeta-at/pi-at/pi'-at i, tau-swap k, hole id
  int64_t b = 0;  // tau-swap l
  std::vector<int64_t> idx;  // zeta-set / eps indices, sorted and unique
  Permutation perm;
  std::vector<ExprPtr> kids;
  Support support;  // static support over-approximation

  ~Expr();  // releases deep chains without recursion
};

namespace ex {
ExprPtr Z();
ExprPtr S();
ExprPtr iota(ExprPtr x, ExprPtr y);
ExprPtr ups(ExprPtr x, ExprPtr y);
ExprPtr rho(ExprPtr x);
ExprPtr sigma(ExprPtr x);
ExprPtr tau(ExprPtr x);
ExprPtr theta(ExprPtr x);
ExprPtr zeta(ExprPtr x);
ExprPtr pi(ExprPtr x);
ExprPtr omega(int64_t m, ExprPtr x);
ExprPtr sigma_pow(int64_t i, ExprPtr x);
ExprPtr zeta_at(int64_t i, ExprPtr x);
ExprPtr zeta_set(std::vector<int64_t> s, ExprPtr x);
ExprPtr pi_prime(ExprPtr x);
ExprPtr pi_at(int64_t i, ExprPtr x);
ExprPtr pi_prime_at(int64_t i, ExprPtr x);
ExprPtr tau_swap(int64_t k, int64_t l, ExprPtr x);
ExprPtr perm(const Permutation& p, ExprPtr x);
ExprPtr eps(std::vector<int64_t> s, ExprPtr x);
ExprPtr sum(ExprPtr x, ExprPtr y);  // throws unless supports are finite and disjoint
ExprPtr iota_n(std::vector<ExprPtr> xs);
ExprPtr ups_n(std::vector<ExprPtr> xs);
ExprPtr hole(int64_t id);
}  // namespace ex

// Generic rebuild with new children, keeping parameters (validates again).
ExprPtr rebuild(const Expr& e, std::vector<ExprPtr> kids);

// S-expression text. Shared subexpressions are printed once through a
// `(let (($n e) ...) body)` form; trees without sharing print plainly.
std::string print_expr(const ExprPtr& e);
ExprPtr parse_expr(std::string_view text);  // throws ParseError

bool expr_equal(const ExprPtr& x, const ExprPtr& y);  // structural
size_t expr_tree_size(const ExprPtr& e);   // counts nodes as a tree (saturating)
size_t expr_dag_size(const ExprPtr& e);    // distinct nodes

// Rewrites every auxiliary operation into leaves and the nine core operations.
ExprPtr lower(const ExprPtr& e);
bool is_core_only(const ExprPtr& e);

struct WindowOptions {
  int64_t witness_slack = 0;  // extra room for pi/pi'/theta witnesses
};

// Child windows used to evaluate node `e` exactly over W (same rule in both
// evaluators). For auxiliary nodes the answer is derived from the lowering, so
// direct and lowered evaluation search witnesses in the same regions.
std::vector<Window> child_windows(const Expr& e, const Window& W, const WindowOptions& opt);

// Whole-tree view of the above, listed in preorder as (node, window) pairs.
std::vector<std::pair<const Expr*, Window>> infer_window(const ExprPtr& e, const Window& W,
                                                         const WindowOptions& opt = {});

std::string support_str(const Support& s);

}  // namespace higman
