#pragma once

#include <functional>
#include <string>
#include <vector>

#include "higman/heval.hpp"

namespace higman {

enum class ArithMode { Diff, Sum };  // third coordinate p-q or p+q

// Expression builders for the standard constructions. Every builder returns an
// expression over the base sets using core and auxiliary operations only.
namespace hm {

ExprPtr singleton(int64_t n);                       // {(n)}
ExprPtr constants(const std::vector<int64_t>& v);   // {(v0, v1, ...)}
ExprPtr sign_plus();                                // {(n) : n >= 1}
ExprPtr sign_minus();                               // {(n) : n <= -1}
ExprPtr above(int64_t k);                           // {(n) : n > k}
ExprPtr below(int64_t k);                           // {(n) : n < k}
ExprPtr other_than(int64_t k);                      // {(n) : n != k}
ExprPtr shifted_sum(const std::vector<std::pair<ExprPtr, int64_t>>& parts);
ExprPtr dup_last(const ExprPtr& b, int64_t k);      // copy f(k) into k+1; needs sup <= k
ExprPtr dup_first(const ExprPtr& b, int64_t j);     // insert a copy of f(j) at j, shift j.. right; needs sup >= j
ExprPtr equal_coords(int64_t a, int64_t b);         // {g : g(a) = g(b)}, a < b, all else free
ExprPtr opposite_pairs();                           // {(n, -n) : n >= 1}
ExprPtr opposite_pairs_all();                       // {(n, -n) : n in Z}
ExprPtr pair_extract(const ExprPtr& b, int64_t i, int64_t j);  // {(f(i), f(j))}
ExprPtr triples(const ExprPtr& p, ArithMode mode);  // {(p, q, p -/+ q)}
ExprPtr negate_coord(const ExprPtr& b, int64_t j);  // f(j) -> -f(j); needs sup >= 0
// Overwrites f(k) with f(i) -/+ f(j). `pairs` must contain every (f(i), f(j)) of
// b; when null it is extracted from b.
ExprPtr replace_coord(const ExprPtr& b, int64_t i, int64_t j, int64_t k, ArithMode mode,
                      const ExprPtr& pairs = nullptr);
ExprPtr scaled_pairs(int64_t s, const ExprPtr& q);  // {(q, s*q)}, s >= 0

// Index choices that the construction leaves ambiguous. The defaults are the
// ones that meet the contracts; the variants exist so tests can refute the others.
const std::vector<int64_t>& triple_extract_positions();  // {0, 1, 3}
int64_t opposite_pairs_liberation_index();                // 1
ExprPtr opposite_pairs_variant(int64_t liberation_index);
ExprPtr triples_variant(const ExprPtr& p, const std::vector<int64_t>& extract_positions);

}  // namespace hm

// A set given both as an expression and as an explicit generator of members
// with all values bounded by M (the oracle side never evaluates expressions).
struct Operand {
  ExprPtr expr;
  std::function<SeqSet(int64_t M)> members;
  std::string desc;
};

Operand operand_constants(const std::vector<std::vector<int64_t>>& seqs);  // finite set
Operand operand_positive_pairs();                                          // {(p, q) : p, q >= 1}
Operand operand_singletons_range(int64_t lo, int64_t hi);                  // {(n) : lo <= n <= hi}

enum class BuilderKind {
  Singletons, Sign, Sum, Duplicate, OppositePairs, ArithTriples, ReplaceCoord, ScaledPairs
};
enum class SignKind { Plus, Minus, PlusMinus };

struct BuilderSpec {
  BuilderKind kind = BuilderKind::Singletons;
  std::vector<int64_t> values;            // singletons
  SignKind sign = SignKind::Plus;         // sign
  std::optional<int64_t> threshold;       // sign: n > k, n < k, n != k
  std::vector<std::pair<Operand, int64_t>> parts;  // sum
  Operand operand;                        // duplicate, triples, replace_coord, scaled_pairs
  int64_t k = 0;                          // duplicate index; replace target; scale factor
  int64_t i = 0, j = 0;                   // replace_coord sources
  ArithMode mode = ArithMode::Diff;
  bool all_integers = false;              // opposite pairs over all n

  std::string describe() const;
};

ExprPtr build(const BuilderSpec& spec);
// Intended set restricted to sup(f) inside W and |f| <= M.
SeqSet oracle_set(const BuilderSpec& spec, const Window& W, int64_t M);

SeqSet truncate(const SeqSet& s, const Window& W, int64_t M);

// Command-line form "kind[:arg,arg,...]", args either key=value or bare words:
//   singletons:(1,-2)   sign:+,k=2   sign:+-   opposite   opposite:all
//   sum:range(0..2)@0,range(1..2)@2   duplicate:k=0,operand=range(-3..3)
//   triples:diff,operand=pairs(1..6)   replace:i=0,j=1,k=2,sum,operand=set((1,2,0);(3,1,0))
//   scaled:s=2,operand=range(0..3)
// Operands: range(lo..hi), pairs(lo..hi), pospairs, set(seq;seq;...).
// Throws std::invalid_argument.
BuilderSpec parse_builder_spec(const std::string& text);

struct VerifyReport {
  std::string spec;
  Window window;
  int64_t mag = 0;
  bool symbolic = true;
  size_t expected = 0, produced = 0;
  std::vector<Seq> missing, extra;  // counterexamples, capped
  bool ok() const { return missing.empty() && extra.empty(); }
  std::string str() const;
};
// Window-truncated comparison of the built expression against oracle_set.
VerifyReport verify_builder(const BuilderSpec& spec, const Window& W, int64_t M, bool symbolic,
                            const EvalOptions& opt = {}, size_t max_counterexamples = 10);

}  // namespace higman
