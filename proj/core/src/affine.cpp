#include "higman/affine.hpp"

#include <cctype>
#include <vector>

namespace higman {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow");
  return r;
}

Affine Affine::param(const std::string& name, int64_t coef) {
  Affine a;
  if (coef != 0) a.terms[name] = coef;
  return a;
}

Affine Affine::operator+(const Affine& o) const {
  Affine r = *this;
  r.c = checked_add(r.c, o.c);
  for (const auto& [n, k] : o.terms) {
    int64_t v = checked_add(r.terms[n], k);
    if (v == 0)
      r.terms.erase(n);
    else
      r.terms[n] = v;
  }
  return r;
}

Affine Affine::operator-() const { return *this * -1; }
Affine Affine::operator-(const Affine& o) const { return *this + (-o); }

Affine Affine::operator*(int64_t k) const {
  Affine r;
  if (k == 0) return r;
  r.c = checked_mul(c, k);
  for (const auto& [n, v] : terms) r.terms[n] = checked_mul(v, k);
  return r;
}

bool Affine::operator<(const Affine& o) const {
  if (terms.empty() != o.terms.empty()) return terms.empty();
  if (terms.size() != o.terms.size()) return terms.size() < o.terms.size();
  auto a = terms.begin();
  auto b = o.terms.begin();
  for (; a != terms.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    // positive coefficient first, so that t and -t end up adjacent as t, -t
    if (a->second != b->second) return a->second > b->second;
  }
  return c < o.c;
}

Affine Affine::substitute(const std::map<std::string, int64_t>& vals) const {
  Affine r;
  r.c = c;
  for (const auto& [n, k] : terms) {
    auto it = vals.find(n);
    if (it != vals.end())
      r.c = checked_add(r.c, checked_mul(k, it->second));
    else
      r.terms[n] = k;
  }
  return r;
}

int64_t Affine::eval(const std::map<std::string, int64_t>& vals) const {
  Affine r = substitute(vals);
  if (!r.terms.empty())
    throw std::invalid_argument("unbound parameter '" + r.terms.begin()->first + "'");
  return r.c;
}

std::string Affine::str() const {
  if (terms.empty()) return std::to_string(c);
  std::vector<std::pair<std::string, int64_t>> pos, neg;
  for (const auto& t : terms) (t.second > 0 ? pos : neg).push_back(t);
  std::string out;
  auto put = [&](const std::string& name, int64_t k, bool first) {
    if (k < 0)
      out += "-";
    else if (!first)
      out += "+";
    int64_t m = k < 0 ? -k : k;
    if (m != 1) out += std::to_string(m);
    out += name;
  };
  bool first = true;
  if (pos.empty() && c > 0) {
    out += std::to_string(c);
    first = false;
  }
  for (const auto& [n, k] : pos) put(n, k, first), first = false;
  for (const auto& [n, k] : neg) put(n, k, first), first = false;
  if (c != 0 && !(pos.empty() && c > 0)) out += (c > 0 ? "+" : "") + std::to_string(c);
  return out;
}

Affine parse_affine(std::string_view s) {
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("affine form '" + std::string(s) + "': " + why + " at " +
                                std::to_string(i));
  };
  Affine out;
  skip();
  if (i >= s.size()) fail("empty");
  bool first = true;
  while (true) {
    skip();
    if (i >= s.size()) break;
    int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    bool have_num = false;
    int64_t num = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      num = checked_add(checked_mul(num, 10), s[i] - '0');
      ++i;
      have_num = true;
    }
    skip();
    if (i < s.size() && s[i] == '*') {
      if (!have_num) fail("'*' without coefficient");
      ++i;
      skip();
    }
    std::string name;
    if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
        name += s[i++];
    }
    if (!have_num && name.empty()) fail("expected a term");
    int64_t coef = sign * (have_num ? num : 1);
    if (name.empty())
      out.c = checked_add(out.c, coef);
    else
      out += Affine::param(name, coef);
  }
  return out;
}

}  // namespace higman
