#include "higman/seqcodec.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace higman {

// ------------------------------------------------------------------ Seq

Seq::Seq(int64_t offset, std::vector<int64_t> coords) {
  size_t a = 0, b = coords.size();
  while (a < b && coords[a] == 0) ++a;
  while (b > a && coords[b - 1] == 0) --b;
  if (a == b) return;
  off_ = offset + static_cast<int64_t>(a);
  c_.assign(coords.begin() + a, coords.begin() + b);
}

int64_t Seq::at(int64_t i) const {
  if (c_.empty() || i < lo() || i > hi()) return 0;
  return c_[i - off_];
}

int64_t Seq::max_abs() const {
  int64_t m = 0;
  for (auto v : c_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::vector<int64_t> Seq::window(int64_t lo, int64_t hi) const {
  std::vector<int64_t> out;
  for (int64_t i = lo; i <= hi; ++i) out.push_back(at(i));
  return out;
}

std::string Seq::str() const {
  if (c_.empty()) return "(0)";
  std::string s = "(";
  for (size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + std::to_string(c_[i]);
  s += ")";
  if (off_ != 0) s += "@" + std::to_string(off_);
  return s;
}

Seq parse_seq(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty() || t[0] != '(') throw ParseError("sequence must start with '('", 0);
  auto close = t.find(')');
  if (close == std::string::npos) throw ParseError("missing ')'", t.size());
  std::vector<int64_t> vals;
  std::string body = t.substr(1, close - 1);
  size_t i = 0;
  while (i < body.size()) {
    size_t j = body.find(',', i);
    if (j == std::string::npos) j = body.size();
    std::string tok = body.substr(i, j - i);
    try {
      size_t used = 0;
      vals.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + tok + "'", 1 + i);
    }
    i = j + 1;
  }
  int64_t off = 0;
  if (close + 1 < t.size()) {
    if (t[close + 1] != '@') throw ParseError("expected '@offset'", close + 1);
    try {
      size_t used = 0;
      std::string o = t.substr(close + 2);
      off = std::stoll(o, &used);
      if (used != o.size()) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      throw ParseError("bad offset", close + 2);
    }
  }
  return Seq(off, vals);
}

// ---------------------------------------------------------- Permutation

Permutation Permutation::from_cycles(const std::vector<std::vector<int64_t>>& cycles) {
  std::map<int64_t, int64_t> m;
  std::set<int64_t> seen;
  for (const auto& cyc : cycles) {
    for (auto x : cyc)
      if (!seen.insert(x).second)
        throw std::invalid_argument("cycles are not disjoint at " + std::to_string(x));
    if (cyc.size() < 2) continue;
    for (size_t i = 0; i < cyc.size(); ++i) m[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  return from_map(m);
}

Permutation Permutation::from_map(const std::map<int64_t, int64_t>& m) {
  Permutation p;
  std::set<int64_t> dom, img;
  for (const auto& [a, b] : m) {
    if (a == b) continue;
    p.fwd_[a] = b;
    dom.insert(a);
    img.insert(b);
  }
  if (dom != img) throw std::invalid_argument("map is not a finitely supported bijection");
  return p;
}

int64_t Permutation::operator()(int64_t i) const {
  auto it = fwd_.find(i);
  return it == fwd_.end() ? i : it->second;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (const auto& [a, b] : fwd_) p.fwd_[b] = a;
  return p;
}

Permutation Permutation::operator*(const Permutation& o) const {
  std::map<int64_t, int64_t> m;
  std::set<int64_t> pts;
  for (const auto& kv : fwd_) pts.insert(kv.first);
  for (const auto& kv : o.fwd_) pts.insert(kv.first);
  for (auto x : pts) m[x] = (*this)(o(x));
  return from_map(m);
}

std::vector<std::vector<int64_t>> Permutation::cycles() const {
  std::vector<std::vector<int64_t>> out;
  std::set<int64_t> done;
  for (const auto& kv : fwd_) {
    if (done.count(kv.first)) continue;
    std::vector<int64_t> cyc;
    int64_t x = kv.first;
    do {
      cyc.push_back(x);
      done.insert(x);
      x = (*this)(x);
    } while (x != kv.first);
    out.push_back(cyc);
  }
  return out;
}

std::vector<std::pair<int64_t, int64_t>> Permutation::transpositions() const {
  std::vector<std::pair<int64_t, int64_t>> out;
  for (const auto& cyc : cycles())
    for (size_t j = cyc.size() - 1; j >= 1; --j) out.push_back({cyc[0], cyc[j]});
  return out;
}

std::string Permutation::str() const {
  if (fwd_.empty()) return "()";
  std::string s;
  for (const auto& cyc : cycles()) {
    s += "(";
    for (size_t i = 0; i < cyc.size(); ++i) s += (i ? " " : "") + std::to_string(cyc[i]);
    s += ")";
  }
  return s;
}

Permutation parse_perm(const std::string& text) {
  std::vector<std::vector<int64_t>> cycles;
  size_t i = 0;
  auto ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("permutation: expected '('", i);
    ++i;
    std::vector<int64_t> cyc;
    while (true) {
      ws();
      if (i >= text.size()) throw ParseError("permutation: unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      size_t st = i;
      if (text[i] == '-') ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (st == i || (text[st] == '-' && st + 1 == i)) throw ParseError("permutation: expected integer", st);
      cyc.push_back(std::stoll(text.substr(st, i - st)));
      ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    cycles.push_back(cyc);
    ws();
  }
  try {
    return Permutation::from_cycles(cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("permutation: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------- templates

Seq SeqTemplate::instantiate(const std::map<std::string, int64_t>& vals) const {
  for (const auto& p : params) {
    auto it = vals.find(p.name);
    if (it != vals.end() && !p.admits(it->second))
      throw std::invalid_argument("value " + std::to_string(it->second) + " out of range for " + p.str());
  }
  std::vector<int64_t> v;
  v.reserve(coords.size());
  for (const auto& a : coords) v.push_back(a.eval(vals));
  return Seq(0, v);
}

std::vector<std::string> SeqTemplate::param_names() const {
  std::vector<std::string> out;
  for (const auto& p : params) out.push_back(p.name);
  return out;
}

std::string SeqTemplate::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].str();
  return s + ")";
}

std::vector<std::pair<Affine, size_t>> runs_of(const std::vector<Affine>& coords) {
  std::vector<std::pair<Affine, size_t>> out;
  for (const auto& a : coords) {
    if (!out.empty() && out.back().first == a)
      ++out.back().second;
    else
      out.push_back({a, 1});
  }
  return out;
}

std::map<Affine, size_t> value_multiset(const std::vector<Affine>& coords) {
  std::map<Affine, size_t> m;
  for (const auto& a : coords) ++m[a];
  return m;
}

std::string SeqTemplate::grouped_str() const {
  std::string s = "(";
  bool first = true;
  for (const auto& [a, n] : runs_of(coords)) {
    if (!first) s += ", ";
    first = false;
    std::string v = a.str();
    if (a.terms.size() > 1 || (!a.terms.empty() && a.c != 0)) v = "(" + v + ")";
    s += (n > 1 ? std::to_string(n) + "x" : "") + v;
  }
  return s + ")";
}

// ---------------------------------------------------------- codec

std::vector<Affine> encode_exponents(const Word& w) {
  std::vector<Affine> out;
  bool expect_b = true;
  for (const auto& s : w.syllables()) {
    bool is_b = s.gen.kind == Generator::Kind::B;
    if (!is_b && s.gen.kind != Generator::Kind::C)
      throw std::invalid_argument("encode: word contains generator " + s.gen.str());
    if (is_b != expect_b) {
      out.push_back(Affine(0));
      expect_b = !expect_b;
    }
    out.push_back(s.exp);
    expect_b = !expect_b;
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

Seq encode_word(const Word& w) {
  if (!w.is_concrete()) throw std::invalid_argument("encode_word needs a concrete word");
  std::vector<int64_t> v;
  for (const auto& a : encode_exponents(w)) v.push_back(a.c);
  return Seq(0, v);
}

SeqTemplate encode_template(const RelatorTemplate& r) {
  SeqTemplate t;
  t.coords = encode_exponents(r.body);
  t.params = r.params;
  return t;
}

Word decode_seq(const Seq& f) {
  if (f.is_zero()) return Word();
  if (f.lo() < 0)
    throw std::invalid_argument("invalid code: nonzero coordinate at negative index " + std::to_string(f.lo()));
  int64_t last = f.hi();
  int64_t top = (last % 2 == 0) ? last + 1 : last;  // window [0, 2m+1]
  std::vector<Syllable> syl;
  for (int64_t i = 0; i <= top; ++i) {
    int64_t v = f.at(i);
    if (v == 0 && i >= 1 && i <= top - 1)
      throw std::invalid_argument("invalid code: zero interior coordinate at index " + std::to_string(i));
    if (v != 0) syl.push_back({i % 2 == 0 ? Generator::b() : Generator::c(), v});
  }
  return Word(syl);
}

ConjugatorWords conjugator_words(const Seq& f) {
  Word bf;
  const Word b = Word::gen(Generator::b()), c = Word::gen(Generator::c());
  for (int64_t i = f.lo(); !f.is_zero() && i <= f.hi(); ++i) {
    int64_t v = f.at(i);
    if (v == 0) continue;
    bf = bf * c.pow(-i) * b.pow(v) * c.pow(i);
  }
  Word af = bf.inverse() * Word::gen(Generator::a_plain()) * bf;
  return {bf, af};
}

std::vector<Word> emit_A_generators(const std::vector<Seq>& B) {
  std::vector<Word> out;
  std::set<std::string> seen;
  for (const auto& f : B) {
    Word w = conjugator_words(f).a_f;
    if (seen.insert(w.str()).second) out.push_back(w);
  }
  return out;
}

std::vector<Seq> instantiate_all(const SeqTemplate& t, int64_t bound) {
  std::vector<std::vector<int64_t>> ranges;
  for (const auto& p : t.params) {
    std::vector<int64_t> r;
    if (p.values) {
      r = *p.values;
    } else {
      for (int64_t v = p.lower.value_or(0); v <= bound; ++v) r.push_back(v);
    }
    ranges.push_back(r);
  }
  std::vector<Seq> out;
  std::map<std::string, int64_t> vals;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == t.params.size()) {
      out.push_back(t.instantiate(vals));
      return;
    }
    for (auto v : ranges[k]) {
      vals[t.params[k].name] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<Word> emit_A_generators(const std::vector<SeqTemplate>& B, int64_t bound) {
  std::vector<Seq> all;
  for (const auto& t : B) {
    auto v = instantiate_all(t, bound);
    all.insert(all.end(), v.begin(), v.end());
  }
  return emit_A_generators(all);
}

Grouping find_grouping_perm(const SeqTemplate& t) {
  std::vector<size_t> pos(t.coords.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::stable_sort(pos.begin(), pos.end(),
                   [&](size_t a, size_t b) { return t.coords[a] < t.coords[b]; });
  std::map<int64_t, int64_t> m;
  SeqTemplate g;
  g.params = t.params;
  for (size_t r = 0; r < pos.size(); ++r) {
    m[static_cast<int64_t>(pos[r])] = static_cast<int64_t>(r);
    g.coords.push_back(t.coords[pos[r]]);
  }
  return {Permutation::from_map(m), g};
}

Seq apply_perm(const Permutation& alpha, const Seq& g) {
  if (g.is_zero()) return g;
  std::map<int64_t, int64_t> out;
  for (int64_t i = g.lo(); i <= g.hi(); ++i)
    if (g.at(i) != 0) out[alpha(i)] = g.at(i);
  int64_t lo = out.begin()->first, hi = out.rbegin()->first;
  std::vector<int64_t> v(static_cast<size_t>(hi - lo + 1), 0);
  for (const auto& [i, x] : out) v[i - lo] = x;
  return Seq(lo, v);
}

SeqTemplate apply_perm(const Permutation& alpha, const SeqTemplate& g) {
  SeqTemplate r;
  r.params = g.params;
  std::map<int64_t, Affine> out;
  int64_t hi = static_cast<int64_t>(g.coords.size()) - 1;
  for (size_t i = 0; i < g.coords.size(); ++i) {
    int64_t j = alpha(static_cast<int64_t>(i));
    if (g.coords[i].is_zero()) continue;
    if (j < 0) throw std::invalid_argument("permutation moves a template coordinate to negative index");
    out[j] = g.coords[i];
    hi = std::max(hi, j);
  }
  r.coords.assign(static_cast<size_t>(hi + 1), Affine(0));
  for (const auto& [j, a] : out) r.coords[j] = a;
  return r;
}

}  // namespace higman
