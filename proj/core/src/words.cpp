#include "higman/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace higman {

std::string Generator::str() const {
  switch (kind) {
    case Kind::AIndexed: return "a[" + index.str() + "]";
    case Kind::B: return "b";
    case Kind::C: return "c";
    case Kind::APlain: return "a";
  }
  return "?";
}

Word::Word(std::vector<Syllable> s) {
  for (const auto& x : s) push(x);
}

Word Word::gen(const Generator& g, Affine e) { return Word({Syllable{g, std::move(e)}}); }

void Word::push(const Syllable& s) {
  if (s.exp.is_zero()) return;
  if (!syl_.empty() && syl_.back().gen == s.gen) {
    Affine e = syl_.back().exp + s.exp;
    syl_.pop_back();
    if (!e.is_zero()) syl_.push_back({s.gen, e});
    return;
  }
  syl_.push_back(s);
}

bool Word::is_concrete() const {
  for (const auto& s : syl_)
    if (!s.exp.is_constant() || !s.gen.index.is_constant()) return false;
  return true;
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  for (const auto& s : o.syl_) r.push(s);
  return r;
}

Word Word::inverse() const {
  Word r;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.push({it->gen, -it->exp});
  return r;
}

Word Word::pow(int64_t n) const {
  Word base = n < 0 ? inverse() : *this;
  int64_t m = n < 0 ? -n : n;
  Word r;
  for (int64_t i = 0; i < m; ++i) r = r * base;
  return r;
}

Word Word::pow(const Affine& t) const {
  if (t.is_constant()) return pow(t.c);
  // peel u ... u^-1 to reach the cyclic core
  size_t lo = 0, hi = syl_.size();
  while (hi - lo >= 2 && syl_[lo].gen == syl_[hi - 1].gen &&
         (syl_[lo].exp + syl_[hi - 1].exp).is_zero()) {
    ++lo;
    --hi;
  }
  if (hi - lo == 0) return Word();
  if (hi - lo != 1 || !syl_[lo].exp.is_constant())
    throw std::invalid_argument("symbolic power " + t.str() + " of word '" + str() +
                                "' needs a concrete exponent (its cyclic core is not a single "
                                "syllable); fix the parameter first");
  std::vector<Syllable> out(syl_.begin(), syl_.begin() + lo);
  out.push_back({syl_[lo].gen, t * syl_[lo].exp.c});
  out.insert(out.end(), syl_.begin() + hi, syl_.end());
  return Word(out);
}

Word Word::substitute_params(const std::map<std::string, int64_t>& vals) const {
  std::vector<Syllable> out;
  for (const auto& s : syl_) {
    Generator g = s.gen;
    g.index = g.index.substitute(vals);
    out.push_back({g, s.exp.substitute(vals)});
  }
  return Word(out);
}

static std::string exp_text(const Affine& e) {
  if (e.is_constant()) return std::to_string(e.c);
  if (e.c == 0 && e.terms.size() == 1 && (e.terms.begin()->second == 1 || e.terms.begin()->second == -1))
    return e.str();
  return "(" + e.str() + ")";
}

std::string Word::str() const {
  if (syl_.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < syl_.size(); ++i) {
    if (i) out += ' ';
    out += syl_[i].gen.str();
    if (!(syl_[i].exp.is_constant() && syl_[i].exp.c == 1)) out += "^" + exp_text(syl_[i].exp);
  }
  return out;
}

Word conjugate(const Word& x, const Word& y) { return y.inverse() * x * y; }
Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

Word substitute(const Word& w,
                const std::function<std::optional<Word>(const Generator&)>& hom) {
  Word r;
  for (const auto& s : w.syllables()) {
    auto img = hom(s.gen);
    if (!img) throw std::invalid_argument("unmapped generator " + s.gen.str());
    r = r * img->pow(s.exp);
  }
  return r;
}

// ---------------------------------------------------------------- parser

namespace {

bool is_ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
}

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parse_all() {
    Word w = word();
    ws();
    if (i_ < s_.size()) fail(std::string("unexpected '") + s_[i_] + "'");
    return w;
  }

 private:
  std::string_view s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError("word syntax: " + msg, i_); }
  void ws() {
    while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == '*'))
      ++i_;
  }
  bool at(char ch) {
    ws();
    return i_ < s_.size() && s_[i_] == ch;
  }
  void expect(char ch) {
    if (!at(ch)) fail(std::string("expected '") + ch + "'");
    ++i_;
  }
  std::string ident() {
    ws();
    size_t st = i_;
    while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
    return std::string(s_.substr(st, i_ - st));
  }
  static bool is_gen_name(const std::string& id) { return id == "a" || id == "b" || id == "c"; }

  bool at_factor_start() {
    ws();
    if (i_ >= s_.size()) return false;
    char ch = s_[i_];
    return ch == '(' || ch == '[' || std::isalpha(static_cast<unsigned char>(ch)) || ch == '1';
  }

  Word word() {
    Word w;
    while (at_factor_start()) w = w * term();
    return w;
  }

  Word term() {
    Word base = factor();
    while (at('^')) {
      ++i_;
      base = apply_exponent(base);
    }
    return base;
  }

  Word generator_from(const std::string& id, size_t start) {
    if (id == "b") return Word::gen(Generator::b());
    if (id == "c") return Word::gen(Generator::c());
    if (id == "a") {
      if (at('[')) {
        ++i_;
        size_t st = i_;
        while (i_ < s_.size() && s_[i_] != ']') ++i_;
        if (i_ >= s_.size()) fail("unterminated a[...]");
        Affine idx;
        try {
          idx = parse_affine(s_.substr(st, i_ - st));
        } catch (const std::invalid_argument& e) {
          throw ParseError(std::string("bad generator index: ") + e.what(), st);
        }
        ++i_;
        return Word::gen(Generator::a(idx));
      }
      return Word::gen(Generator::a_plain());
    }
    throw ParseError("undeclared generator '" + id + "'", start);
  }

  Word factor() {
    ws();
    if (at('(')) {
      ++i_;
      Word w = word();
      expect(')');
      return w;
    }
    if (at('[')) {
      ++i_;
      Word x = word();
      expect(',');
      Word y = word();
      expect(']');
      return commutator(x, y);
    }
    size_t st = i_;
    if (s_[i_] == '1' && (i_ + 1 >= s_.size() || !is_ident_char(s_[i_ + 1]))) {
      ++i_;
      return Word();
    }
    std::string id = ident();
    if (id.empty()) fail("expected a generator");
    return generator_from(id, st);
  }

  size_t matching_paren(size_t open) {
    int depth = 0;
    for (size_t j = open; j < s_.size(); ++j) {
      if (s_[j] == '(') ++depth;
      if (s_[j] == ')' && --depth == 0) return j;
    }
    throw ParseError("unbalanced parenthesis", open);
  }

  static std::optional<Affine> try_affine(std::string_view text) {
    try {
      Affine a = parse_affine(text);
      for (const auto& t : a.terms)
        if (is_gen_name(t.first)) return std::nullopt;
      return a;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  Word apply_exponent(const Word& base) {
    ws();
    bool neg = false;
    if (at('-')) {
      neg = true;
      ++i_;
      ws();
    }
    if (i_ >= s_.size()) fail("missing exponent");
    char ch = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      int64_t n = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        n = checked_add(checked_mul(n, 10), s_[i_++] - '0');
      return base.pow(neg ? -n : n);
    }
    if (ch == '(') {
      size_t close = matching_paren(i_);
      auto inner = s_.substr(i_ + 1, close - i_ - 1);
      if (auto a = try_affine(inner)) {
        i_ = close + 1;
        return power(base, neg ? -*a : *a);
      }
      // word conjugator; a leading '-' inside the parentheses inverts the conjugate
      ++i_;
      bool inner_neg = false;
      if (at('-')) {
        inner_neg = true;
        ++i_;
      }
      Word y = word();
      expect(')');
      Word r = conjugate(base, y);
      return (neg != inner_neg) ? r.inverse() : r;
    }
    if (ch == '[') {
      Word y = factor();
      Word r = conjugate(base, y);
      return neg ? r.inverse() : r;
    }
    size_t st = i_;
    std::string id = ident();
    if (id.empty()) fail("bad exponent");
    if (is_gen_name(id)) {
      Word y = generator_from(id, st);
      Word r = conjugate(base, y);
      return neg ? r.inverse() : r;
    }
    Affine a = Affine::param(id, neg ? -1 : 1);
    return power(base, a);
  }

  Word power(const Word& base, const Affine& e) {
    try {
      return base.pow(e);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what(), i_);
    }
  }
};

void collect_params(const Affine& a, std::set<std::string>& out) {
  for (const auto& t : a.terms) out.insert(t.first);
}

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '{') ++depth;
    if (ch == '}') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int64_t parse_int(const std::string& s, size_t line) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + s + "'", 0);
  }
}

std::vector<ParamDecl> parse_constraints(const std::string& text, size_t line) {
  std::vector<ParamDecl> out;
  for (const auto& clause : split(text, ';')) {
    if (clause.empty()) continue;
    std::string names, rhs;
    ParamDecl proto;
    size_t p;
    if ((p = clause.find(">=")) != std::string::npos) {
      names = clause.substr(0, p);
      proto.lower = parse_int(trim(clause.substr(p + 2)), line);
    } else if ((p = clause.find(" in ")) != std::string::npos) {
      names = clause.substr(0, p);
      std::string set = trim(clause.substr(p + 4));
      if (set.size() < 2 || set.front() != '{' || set.back() != '}')
        throw ParseError("line " + std::to_string(line) + ": expected {..} set", 0);
      std::vector<int64_t> vals;
      for (const auto& v : split(set.substr(1, set.size() - 2), ','))
        if (!v.empty()) vals.push_back(parse_int(v, line));
      proto.values = vals;
    } else if ((p = clause.find('=')) != std::string::npos) {
      names = clause.substr(0, p);
      proto.values = std::vector<int64_t>{parse_int(trim(clause.substr(p + 1)), line)};
    } else {
      throw ParseError("line " + std::to_string(line) + ": bad constraint '" + clause + "'", 0);
    }
    for (const auto& n : split(names, ',')) {
      if (n.empty()) throw ParseError("line " + std::to_string(line) + ": empty parameter name", 0);
      ParamDecl d = proto;
      d.name = n;
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse_all(); }

bool ParamDecl::admits(int64_t v) const {
  if (lower && v < *lower) return false;
  if (values && std::find(values->begin(), values->end(), v) == values->end()) return false;
  return true;
}

std::string ParamDecl::str() const {
  if (values) {
    if (values->size() == 1) return name + " = " + std::to_string(values->front());
    std::string s = name + " in {";
    for (size_t i = 0; i < values->size(); ++i) s += (i ? "," : "") + std::to_string((*values)[i]);
    return s + "}";
  }
  return name + " >= " + std::to_string(lower.value_or(0));
}

std::vector<std::string> RelatorTemplate::param_names() const {
  std::vector<std::string> out;
  for (const auto& p : params) out.push_back(p.name);
  return out;
}

Word RelatorTemplate::instantiate(const std::map<std::string, int64_t>& vals) const {
  for (const auto& p : params) {
    auto it = vals.find(p.name);
    if (it == vals.end()) throw std::invalid_argument("missing value for parameter " + p.name);
    if (!p.admits(it->second))
      throw std::invalid_argument("value " + std::to_string(it->second) +
                                  " out of range for " + p.str());
  }
  Word w = body.substitute_params(vals);
  if (!w.is_concrete()) throw std::invalid_argument("instantiation left free parameters");
  return w;
}

std::string RelatorTemplate::str() const {
  std::string s = body.str();
  if (params.empty()) return s;
  s += " : ";
  for (size_t i = 0; i < params.size();) {
    size_t j = i + 1;
    // group consecutive lower-bound declarations sharing a bound
    while (j < params.size() && !params[i].values && !params[j].values &&
           params[j].lower == params[i].lower)
      ++j;
    if (i) s += "; ";
    if (j - i > 1) {
      for (size_t t = i; t < j; ++t) s += (t > i ? "," : "") + params[t].name;
      s += " >= " + std::to_string(*params[i].lower);
    } else {
      s += params[i].str();
    }
    i = j;
  }
  return s;
}

std::string Presentation::str() const {
  std::string s;
  if (has_family)
    s += "gen a[" + family_var + "] : " + family_var + " >= " + std::to_string(family_lower) + "\n";
  if (!plain_gens.empty()) {
    s += "gen ";
    for (size_t i = 0; i < plain_gens.size(); ++i) s += (i ? ", " : "") + plain_gens[i];
    s += "\n";
  }
  for (const auto& r : relators) s += "rel " + r.str() + "\n";
  return s;
}

void check_template_form(const Affine& a, const std::string& where) {
  bool ok = a.terms.size() <= 2;
  for (const auto& t : a.terms)
    if (t.second != 1 && t.second != -1) ok = false;
  if (a.terms.size() == 2 && a.terms.begin()->second == std::next(a.terms.begin())->second)
    ok = false;
  if (!ok)
    throw std::invalid_argument("unsupported affine form '" + a.str() + "' in " + where +
                                " (allowed: +-t + c or a difference of two parameters)");
}

Presentation parse_presentation(std::string_view text) {
  Presentation pres;
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto err = [&](const std::string& m) -> ParseError {
      return ParseError("line " + std::to_string(line_no) + ": " + m, 0);
    };
    if (line.rfind("gen ", 0) == 0) {
      std::string rest = trim(line.substr(4));
      if (rest.rfind("a[", 0) == 0) {
        auto close = rest.find(']');
        auto colon = rest.find(':');
        if (close == std::string::npos || colon == std::string::npos)
          throw err("expected `gen a[i] : i >= 1`");
        pres.has_family = true;
        pres.family_var = trim(rest.substr(2, close - 2));
        auto cons = parse_constraints(trim(rest.substr(colon + 1)), line_no);
        if (cons.size() != 1 || cons[0].name != pres.family_var || !cons[0].lower)
          throw err("family constraint must be `" + pres.family_var + " >= n`");
        pres.family_lower = *cons[0].lower;
        if (pres.family_lower < 1) throw err("family index must start at 1 or later");
      } else {
        for (const auto& g : split(rest, ',')) {
          if (g != "b" && g != "c" && g != "a") throw err("unknown generator '" + g + "'");
          pres.plain_gens.push_back(g);
        }
      }
    } else if (line.rfind("rel ", 0) == 0) {
      std::string rest = line.substr(4);
      auto colon = rest.find(':');
      RelatorTemplate rt;
      rt.body = parse_word(trim(colon == std::string::npos ? rest : rest.substr(0, colon)));
      if (colon != std::string::npos) rt.params = parse_constraints(trim(rest.substr(colon + 1)), line_no);
      std::set<std::string> used, declared;
      for (const auto& p : rt.params) declared.insert(p.name);
      for (const auto& s : rt.body.syllables()) {
        check_template_form(s.exp, "exponent");
        collect_params(s.exp, used);
        if (s.gen.kind == Generator::Kind::AIndexed) {
          check_template_form(s.gen.index, "generator index");
          collect_params(s.gen.index, used);
          if (!pres.has_family) throw err("a[...] used without `gen a[i]` declaration");
        } else {
          std::string g = s.gen.str();
          if (std::find(pres.plain_gens.begin(), pres.plain_gens.end(), g) == pres.plain_gens.end())
            throw err("undeclared generator " + g);
        }
      }
      for (const auto& u : used)
        if (!declared.count(u)) throw err("undeclared parameter '" + u + "'");
      pres.relators.push_back(rt);
    } else {
      throw err("expected `gen` or `rel`");
    }
  }
  return pres;
}

Presentation fix_params(const Presentation& p, const std::map<std::string, int64_t>& vals) {
  Presentation out = p;
  for (auto& r : out.relators) {
    std::vector<ParamDecl> keep;
    for (const auto& d : r.params) {
      auto it = vals.find(d.name);
      if (it == vals.end()) {
        keep.push_back(d);
      } else if (!d.admits(it->second)) {
        throw std::invalid_argument("value " + std::to_string(it->second) + " out of range for " + d.str());
      }
    }
    r.params = keep;
    r.body = r.body.substitute_params(vals);
  }
  return out;
}

}  // namespace higman
