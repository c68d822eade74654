#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "higman/words.hpp"

namespace higman {

// Finite-support function Z -> Z. Canonical: first and last stored entries are
// nonzero; the zero function is the empty list at offset 0.
class Seq {
 public:
  Seq() = default;
  Seq(int64_t offset, std::vector<int64_t> coords);  // canonicalizes

  int64_t offset() const { return off_; }
  const std::vector<int64_t>& coords() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int64_t at(int64_t i) const;
  int64_t lo() const { return off_; }
  int64_t hi() const { return off_ + static_cast<int64_t>(c_.size()) - 1; }
  int64_t max_abs() const;
  // Values on [lo, hi], zero-padded.
  std::vector<int64_t> window(int64_t lo, int64_t hi) const;

  bool operator==(const Seq& o) const = default;
  auto operator<=>(const Seq& o) const = default;

  std::string str() const;  // "(3,1,-1,2)" or "(5)@1"; zero prints as "(0)"

 private:
  int64_t off_ = 0;
  std::vector<int64_t> c_;
};

Seq parse_seq(const std::string& text);  // throws ParseError

// Finitely supported bijection of Z, stored as the map of moved points.
class Permutation {
 public:
  Permutation() = default;
  static Permutation from_cycles(const std::vector<std::vector<int64_t>>& cycles);
  static Permutation from_map(const std::map<int64_t, int64_t>& m);  // validates bijectivity

  int64_t operator()(int64_t i) const;
  Permutation inverse() const;
  // (a*b)(i) = a(b(i))
  Permutation operator*(const Permutation& o) const;
  bool is_identity() const { return fwd_.empty(); }
  const std::map<int64_t, int64_t>& moved() const { return fwd_; }
  std::vector<std::vector<int64_t>> cycles() const;  // nontrivial cycles, canonical order
  // Transposition factorization: result t_1 ... t_m with t_m applied first.
  std::vector<std::pair<int64_t, int64_t>> transpositions() const;

  bool operator==(const Permutation& o) const = default;
  std::string str() const;  // "(1 24 7 22 6)(19 26)"; identity prints "()"

 private:
  std::map<int64_t, int64_t> fwd_;
};

Permutation parse_perm(const std::string& text);  // accepts singleton cycles

struct SeqTemplate {
  std::vector<Affine> coords;  // coordinate i sits at index i
  std::vector<ParamDecl> params;

  Seq instantiate(const std::map<std::string, int64_t>& vals) const;
  std::vector<std::string> param_names() const;
  bool operator==(const SeqTemplate& o) const { return coords == o.coords; }
  std::string str() const;  // "(1, -k, ...)"
  std::string grouped_str() const;  // "(11x1, 11x-1, 2xk, ...)"
};

// Maximal runs of syntactically equal forms, in order.
std::vector<std::pair<Affine, size_t>> runs_of(const std::vector<Affine>& coords);
std::map<Affine, size_t> value_multiset(const std::vector<Affine>& coords);

Seq encode_word(const Word& w);                    // concrete {b,c} word
std::vector<Affine> encode_exponents(const Word& w);  // symbolic variant, offset 0
SeqTemplate encode_template(const RelatorTemplate& r);
Word decode_seq(const Seq& f);                     // throws std::invalid_argument

struct ConjugatorWords {
  Word b_f;
  Word a_f;
};
ConjugatorWords conjugator_words(const Seq& f);

std::vector<Word> emit_A_generators(const std::vector<Seq>& B);
// Instantiates each template over its parameter ranges, capping lower-bounded
// parameters at `bound`.
std::vector<Seq> instantiate_all(const SeqTemplate& t, int64_t bound);
std::vector<Word> emit_A_generators(const std::vector<SeqTemplate>& B, int64_t bound);

struct Grouping {
  Permutation alpha;
  SeqTemplate grouped;
};
Grouping find_grouping_perm(const SeqTemplate& t);

// f(i) = g(alpha^{-1}(i))
Seq apply_perm(const Permutation& alpha, const Seq& g);
SeqTemplate apply_perm(const Permutation& alpha, const SeqTemplate& g);

}  // namespace higman
