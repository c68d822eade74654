#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "higman/affine.hpp"

namespace higman {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p)
      : std::runtime_error(msg + " (at offset " + std::to_string(p) + ")"), pos(p) {}
};

struct Generator {
  enum class Kind { AIndexed, B, C, APlain };
  Kind kind = Kind::B;
  Affine index;  // meaningful for AIndexed only

  static Generator a(Affine i) { return {Kind::AIndexed, std::move(i)}; }
  static Generator b() { return {Kind::B, {}}; }
  static Generator c() { return {Kind::C, {}}; }
  static Generator a_plain() { return {Kind::APlain, {}}; }

  bool operator==(const Generator& o) const = default;
  std::string str() const;
};

struct Syllable {
  Generator gen;
  Affine exp;  // never identically zero
  bool operator==(const Syllable& o) const = default;
};

// Freely reduced word. Exponents may be affine forms; a syllable disappears only
// when its exponent is identically zero, so symbolic reduction never depends on
// parameter values.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> s);  // reduces
  static Word gen(const Generator& g, Affine e = 1);

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  size_t size() const { return syl_.size(); }
  bool is_concrete() const;
  bool operator==(const Word& o) const = default;

  Word operator*(const Word& o) const;
  Word inverse() const;
  Word pow(int64_t n) const;
  // Symbolic power: allowed when the cyclic core is a single syllable with
  // constant exponent, or when `t` is constant. Throws std::invalid_argument.
  Word pow(const Affine& t) const;
  Word substitute_params(const std::map<std::string, int64_t>& vals) const;

  std::string str() const;  // canonical text, parse_word(str()) == *this

 private:
  std::vector<Syllable> syl_;
  void push(const Syllable& s);
};

Word conjugate(const Word& x, const Word& y);   // y^-1 x y
Word commutator(const Word& x, const Word& y);  // x^-1 y^-1 x y

// Homomorphic image: every generator occurrence g^e is replaced by hom(g)^e.
// hom returns nullopt for generators outside its domain (an error).
Word substitute(const Word& w, const std::function<std::optional<Word>(const Generator&)>& hom);

// Grammar: juxtaposition is product; x^n power; x^y = y^-1 x y; [x,y] commutator;
// generators a, a[i], b, c; inside ^(...) an affine form over parameter names is an
// exponent, anything else a word. Throws ParseError.
Word parse_word(std::string_view text);

struct ParamDecl {
  std::string name;
  std::optional<int64_t> lower;         // name >= lower
  std::optional<std::vector<int64_t>> values;  // name in {..}
  bool admits(int64_t v) const;
  std::string str() const;
};

struct RelatorTemplate {
  Word body;
  std::vector<ParamDecl> params;
  std::vector<std::string> param_names() const;
  Word instantiate(const std::map<std::string, int64_t>& vals) const;
  std::string str() const;
};

struct Presentation {
  bool has_family = false;     // gen a[i] : i >= lo
  std::string family_var = "i";
  int64_t family_lower = 1;
  std::vector<std::string> plain_gens;  // e.g. b, c for 2-generator output
  std::vector<RelatorTemplate> relators;
  std::string str() const;
};

// Validates the exponent/index shape allowed in relator templates: coefficients in
// {-1,0,1}, at most two parameters, two parameters only as a difference.
void check_template_form(const Affine& a, const std::string& where);

// Line-oriented format: `gen a[i] : i >= 1`, `gen b, c`, `rel <word> : <constraints>`
// with constraints `k,l >= 1`, `p in {2,3}`, `p = 2` separated by ';'. `#` comments.
Presentation parse_presentation(std::string_view text);

// Replace parameters by values throughout (used for fixed parameters such as p).
Presentation fix_params(const Presentation& p, const std::map<std::string, int64_t>& vals);

}  // namespace higman
