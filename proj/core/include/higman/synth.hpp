#pragma once

#include <optional>
#include <string>
#include <vector>

#include "higman/hmachine.hpp"
#include "higman/seqcodec.hpp"

namespace higman {

struct SynthStep {
  std::string lemma;            // builder used
  std::string detail;
  std::vector<int64_t> coords;  // template indices this step settles (may be empty)
};

struct SynthResult {
  ExprPtr grouped_expr;  // denotes the grouped family, coordinates in template order
  ExprPtr expr;          // after alpha^{-1} when a grouping permutation was supplied
  std::vector<SynthStep> steps;
  std::vector<std::string> notes;  // index decisions and window requirements
  size_t length = 0;

  std::string log() const;
  // A window on which membership of an instance with all |values| <= max_abs is exact.
  Window window_for(int64_t max_abs) const;
};

// Builds an expression for {grouped(t) : t in the parameter domains}. Domains
// come from the template's ParamDecls and must be lower bounds. When `alpha` is
// given (grouped = alpha f), the returned `expr` denotes the ungrouped family.
// Throws std::invalid_argument naming the coordinate index and form it cannot handle.
SynthResult synth_from_grouped_template(const SeqTemplate& grouped,
                                        const std::optional<Permutation>& alpha = std::nullopt);

}  // namespace higman
