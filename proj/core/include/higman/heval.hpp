#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "higman/expr.hpp"
#include "higman/lattice.hpp"

namespace higman {

struct EvalOptions {
  WindowOptions window;
  size_t pattern_cap = 1000000;     // states / patterns per node
  size_t enum_budget = 10000000;    // candidate vectors in the enumerative oracle
  int64_t enum_mag_slack = 2;       // extra magnitude allowed for discarded witnesses
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite union of affine patterns over a window: each pattern is a lattice in
// Z^|W| whose coordinates are affine in free integer parameters.
struct PatternSet {
  Window window;
  std::vector<Lattice> patterns;  // canonical, sorted, duplicate-free

  bool empty() const { return patterns.empty(); }
  bool contains(const Seq& f) const;
  std::string str() const;  // one "(t, t+1)@[0,1]" per line
};

using SeqSet = std::set<Seq>;

PatternSet eval_symbolic(const ExprPtr& e, const Window& W, const EvalOptions& opt = {});
// Concrete members with all |f(i)| <= M. Throws CapExceeded past opt.enum_budget.
SeqSet expand(const PatternSet& ps, int64_t M, const EvalOptions& opt = {});

SeqSet eval_enum(const ExprPtr& e, const Window& W, int64_t M, const EvalOptions& opt = {});

struct MemberResult {
  bool member = false;
  std::vector<std::string> trace;  // one line per node visited (depth-indented)
};
// Throws WindowTooSmall when sup(f) is not inside W.
MemberResult member(const ExprPtr& e, const Seq& f, const Window& W, const EvalOptions& opt = {},
                    size_t trace_limit = 400);

struct StabilizeStep {
  Window window;
  int64_t mag;
  std::set<std::vector<int64_t>> values;  // restriction to the probe positions
};
struct StabilizeReport {
  std::vector<int64_t> probe;
  std::vector<StabilizeStep> steps;
  bool stable = false;
  std::string str() const;
};
StabilizeReport stabilize(const ExprPtr& e, const std::vector<int64_t>& probe,
                          const std::vector<std::pair<Window, int64_t>>& schedule,
                          const EvalOptions& opt = {});

// Projection of the symbolic denotation onto the given positions of W.
std::vector<Lattice> eval_projection(const ExprPtr& e, const Window& W, const std::vector<int64_t>& positions,
                                     const EvalOptions& opt = {});

}  // namespace higman
