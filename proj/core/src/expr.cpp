#include "higman/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace higman {

bool is_leaf(Op op) { return op == Op::Z || op == Op::S || op == Op::Hole; }

bool is_core(Op op) {
  switch (op) {
    case Op::Z: case Op::S: case Op::Iota: case Op::Ups: case Op::Rho: case Op::Sigma:
    case Op::Tau: case Op::Theta: case Op::Zeta: case Op::Pi: case Op::Omega:
      return true;
    default:
      return false;
  }
}

const char* op_keyword(Op op) {
  switch (op) {
    case Op::Z: return "Z";
    case Op::S: return "S";
    case Op::Iota: return "iota";
    case Op::Ups: return "ups";
    case Op::Rho: return "rho";
    case Op::Sigma: return "sigma";
    case Op::Tau: return "tau";
    case Op::Theta: return "theta";
    case Op::Zeta: return "zeta";
    case Op::Pi: return "pi";
    case Op::Omega: return "omega";
    case Op::SigmaPow: return "sigma^";
    case Op::ZetaAt: return "zeta-at";
    case Op::ZetaSet: return "zeta-set";
    case Op::PiPrime: return "pi'";
    case Op::PiAt: return "pi-at";
    case Op::PiPrimeAt: return "pi'-at";
    case Op::TauSwap: return "tau-swap";
    case Op::Perm: return "perm";
    case Op::Eps: return "eps";
    case Op::Sum: return "sum";
    case Op::IotaN: return "iota*";
    case Op::UpsN: return "ups*";
    case Op::Hole: return "?";
  }
  return "?";
}

Expr::~Expr() {
  std::vector<ExprPtr> st;
  for (auto& k : kids)
    if (k.use_count() == 1) st.push_back(std::move(k));
  while (!st.empty()) {
    ExprPtr p = std::move(st.back());
    st.pop_back();
    if (p.use_count() != 1) continue;
    // sole owner: detach grandchildren before p goes away
    for (auto& k : const_cast<Expr&>(*p).kids)
      if (k.use_count() == 1) st.push_back(std::move(k));
  }
}

Window hull(const Window& a, const Window& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Window parse_window(const std::string& text) {
  auto colon = text.find(':', text.empty() || text[0] != '-' ? 0 : 1);
  if (colon == std::string::npos) throw std::invalid_argument("window must be lo:hi, got '" + text + "'");
  Window w;
  try {
    w.lo = std::stoll(text.substr(0, colon));
    w.hi = std::stoll(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("window must be lo:hi, got '" + text + "'");
  }
  if (w.lo > w.hi) throw std::invalid_argument("window needs lo <= hi");
  return w;
}

std::string support_str(const Support& s) {
  if (!s) return "unbounded";
  std::string out = "{";
  bool first = true;
  for (auto i : *s) {
    out += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return out + "}";
}

// ------------------------------------------------------------ support

namespace {

Support map_support(const Support& s, const std::function<int64_t(int64_t)>& f) {
  if (!s) return std::nullopt;
  std::set<int64_t> out;
  for (auto i : *s) out.insert(f(i));
  return out;
}

Support add_points(const Support& s, const std::vector<int64_t>& pts) {
  if (!s) return std::nullopt;
  std::set<int64_t> out = *s;
  out.insert(pts.begin(), pts.end());
  return out;
}

constexpr int64_t kInf = INT64_MAX / 4;

// Interval hull of the support when no finite set is known; only liberations
// with a one-sided range and simple relocations are tracked.
std::pair<int64_t, int64_t> support_bound(const Expr& e, int depth) {
  if (e.support) {
    if (e.support->empty()) return {1, 0};
    return {*e.support->begin(), *e.support->rbegin()};
  }
  if (depth > 8) return {-kInf, kInf};
  auto kid = [&](size_t i) { return support_bound(*e.kids[i], depth + 1); };
  auto join = [](std::pair<int64_t, int64_t> a, int64_t lo, int64_t hi) {
    if (a.first > a.second) return std::make_pair(lo, hi);
    return std::make_pair(std::min(a.first, lo), std::max(a.second, hi));
  };
  switch (e.op) {
    case Op::PiPrime: return join(kid(0), -kInf, -1);
    case Op::PiPrimeAt: return join(kid(0), -kInf, e.a - 1);
    case Op::Pi: return join(kid(0), 1, kInf);
    case Op::PiAt: return join(kid(0), e.a + 1, kInf);
    case Op::Sigma: case Op::SigmaPow: {
      auto b = kid(0);
      int64_t d = e.op == Op::Sigma ? 1 : e.a;
      if (b.first > b.second) return b;
      return {b.first <= -kInf ? -kInf : b.first + d, b.second >= kInf ? kInf : b.second + d};
    }
    case Op::Rho: {
      auto b = kid(0);
      if (b.first > b.second) return b;
      return {-b.second, -b.first};
    }
    case Op::Iota: case Op::IotaN: {
      std::pair<int64_t, int64_t> acc{-kInf, kInf};
      for (size_t i = 0; i < e.kids.size(); ++i) {
        auto b = kid(i);
        acc = {std::max(acc.first, b.first), std::min(acc.second, b.second)};
      }
      return acc;
    }
    default: return {-kInf, kInf};
  }
}

Support compute_support(const Expr& e) {
  auto kid = [&](size_t i) -> const Support& { return e.kids[i]->support; };
  switch (e.op) {
    case Op::Z: return std::set<int64_t>{};
    case Op::S: return std::set<int64_t>{0, 1};
    case Op::Hole: return std::nullopt;
    case Op::Iota:
    case Op::IotaN: {
      Support acc = std::nullopt;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (!kid(i)) continue;
        if (!acc) {
          acc = kid(i);
        } else {
          std::set<int64_t> x;
          for (auto v : *acc)
            if (kid(i)->count(v)) x.insert(v);
          acc = x;
        }
      }
      if (!acc) return acc;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (kid(i)) continue;
        auto [lo, hi] = support_bound(*e.kids[i], 0);
        std::set<int64_t> x;
        for (auto v : *acc)
          if (lo <= v && v <= hi) x.insert(v);
        acc = x;
      }
      return acc;
    }
    case Op::Ups:
    case Op::UpsN:
    case Op::Sum: {
      std::set<int64_t> acc;
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (!kid(i)) return std::nullopt;
        acc.insert(kid(i)->begin(), kid(i)->end());
      }
      return acc;
    }
    case Op::Rho: return map_support(kid(0), [](int64_t i) { return -i; });
    case Op::Sigma: return map_support(kid(0), [](int64_t i) { return i + 1; });
    case Op::SigmaPow: return map_support(kid(0), [&](int64_t i) { return i + e.a; });
    case Op::Tau: return map_support(kid(0), [](int64_t i) { return i == 0 ? 1 : i == 1 ? 0 : i; });
    case Op::TauSwap:
      return map_support(kid(0), [&](int64_t i) { return i == e.a ? e.b : i == e.b ? e.a : i; });
    case Op::Perm: return map_support(kid(0), [&](int64_t i) { return e.perm(i); });
    case Op::Theta: {
      if (!kid(0)) return std::nullopt;
      std::set<int64_t> out;
      for (auto i : *kid(0))
        if (i % 2 == 0) out.insert(i / 2);
      return out;
    }
    case Op::Zeta: return add_points(kid(0), {0});
    case Op::ZetaAt: return add_points(kid(0), {e.a});
    case Op::ZetaSet: return add_points(kid(0), e.idx);
    case Op::Pi: case Op::PiPrime: case Op::PiAt: case Op::PiPrimeAt: case Op::Omega:
      return std::nullopt;
    case Op::Eps: {
      std::set<int64_t> out;
      for (int64_t i = 0; i < static_cast<int64_t>(e.idx.size()); ++i) out.insert(i);
      return out;
    }
  }
  return std::nullopt;
}

ExprPtr make(Op op, std::vector<ExprPtr> kids, int64_t a = 0, int64_t b = 0,
             std::vector<int64_t> idx = {}, Permutation perm = {}) {
  for (const auto& k : kids)
    if (!k) throw std::invalid_argument(std::string("null operand for ") + op_keyword(op));
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->a = a;
  e->b = b;
  e->idx = std::move(idx);
  e->perm = std::move(perm);
  e->kids = std::move(kids);
  e->support = compute_support(*e);
  return e;
}

std::vector<int64_t> norm_set(std::vector<int64_t> s, const char* what) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw std::invalid_argument(std::string(what) + " needs a nonempty index set");
  return s;
}

}  // namespace

namespace ex {
ExprPtr Z() {
  static ExprPtr z = make(Op::Z, {});
  return z;
}
ExprPtr S() {
  static ExprPtr s = make(Op::S, {});
  return s;
}
ExprPtr iota(ExprPtr x, ExprPtr y) { return make(Op::Iota, {x, y}); }
ExprPtr ups(ExprPtr x, ExprPtr y) { return make(Op::Ups, {x, y}); }
ExprPtr rho(ExprPtr x) { return make(Op::Rho, {x}); }
ExprPtr sigma(ExprPtr x) { return make(Op::Sigma, {x}); }
ExprPtr tau(ExprPtr x) { return make(Op::Tau, {x}); }
ExprPtr theta(ExprPtr x) { return make(Op::Theta, {x}); }
ExprPtr zeta(ExprPtr x) { return make(Op::Zeta, {x}); }
ExprPtr pi(ExprPtr x) { return make(Op::Pi, {x}); }
ExprPtr omega(int64_t m, ExprPtr x) {
  if (m < 1) throw std::invalid_argument("omega needs m >= 1");
  return make(Op::Omega, {x}, m);
}
ExprPtr sigma_pow(int64_t i, ExprPtr x) { return make(Op::SigmaPow, {x}, i); }
ExprPtr zeta_at(int64_t i, ExprPtr x) { return make(Op::ZetaAt, {x}, i); }
ExprPtr zeta_set(std::vector<int64_t> s, ExprPtr x) {
  return make(Op::ZetaSet, {x}, 0, 0, norm_set(std::move(s), "zeta-set"));
}
ExprPtr pi_prime(ExprPtr x) { return make(Op::PiPrime, {x}); }
ExprPtr pi_at(int64_t i, ExprPtr x) { return make(Op::PiAt, {x}, i); }
ExprPtr pi_prime_at(int64_t i, ExprPtr x) { return make(Op::PiPrimeAt, {x}, i); }
ExprPtr tau_swap(int64_t k, int64_t l, ExprPtr x) {
  if (!(k < l)) throw std::invalid_argument("tau-swap needs k < l");
  return make(Op::TauSwap, {x}, k, l);
}
ExprPtr perm(const Permutation& p, ExprPtr x) { return make(Op::Perm, {x}, 0, 0, {}, p); }
ExprPtr eps(std::vector<int64_t> s, ExprPtr x) { return make(Op::Eps, {x}, 0, 0, norm_set(std::move(s), "eps")); }
ExprPtr sum(ExprPtr x, ExprPtr y) {
  if (!x || !y) throw std::invalid_argument("null operand for sum");
  if (!x->support || !y->support)
    throw std::invalid_argument("sum needs operands with finite static support");
  for (auto i : *x->support)
    if (y->support->count(i))
      throw std::invalid_argument("sum operands overlap at index " + std::to_string(i) + " (supports " +
                                  support_str(x->support) + " and " + support_str(y->support) + ")");
  return make(Op::Sum, {x, y});
}
ExprPtr iota_n(std::vector<ExprPtr> xs) {
  if (xs.size() < 2) throw std::invalid_argument("iota* needs at least two operands");
  return make(Op::IotaN, std::move(xs));
}
ExprPtr ups_n(std::vector<ExprPtr> xs) {
  if (xs.size() < 2) throw std::invalid_argument("ups* needs at least two operands");
  return make(Op::UpsN, std::move(xs));
}
ExprPtr hole(int64_t id) { return make(Op::Hole, {}, id); }
}  // namespace ex

ExprPtr rebuild(const Expr& e, std::vector<ExprPtr> kids) {
  switch (e.op) {
    case Op::Z: return ex::Z();
    case Op::S: return ex::S();
    case Op::Hole: return ex::hole(e.a);
    case Op::Iota: return ex::iota(kids[0], kids[1]);
    case Op::Ups: return ex::ups(kids[0], kids[1]);
    case Op::Rho: return ex::rho(kids[0]);
    case Op::Sigma: return ex::sigma(kids[0]);
    case Op::Tau: return ex::tau(kids[0]);
    case Op::Theta: return ex::theta(kids[0]);
    case Op::Zeta: return ex::zeta(kids[0]);
    case Op::Pi: return ex::pi(kids[0]);
    case Op::Omega: return ex::omega(e.a, kids[0]);
    case Op::SigmaPow: return ex::sigma_pow(e.a, kids[0]);
    case Op::ZetaAt: return ex::zeta_at(e.a, kids[0]);
    case Op::ZetaSet: return ex::zeta_set(e.idx, kids[0]);
    case Op::PiPrime: return ex::pi_prime(kids[0]);
    case Op::PiAt: return ex::pi_at(e.a, kids[0]);
    case Op::PiPrimeAt: return ex::pi_prime_at(e.a, kids[0]);
    case Op::TauSwap: return ex::tau_swap(e.a, e.b, kids[0]);
    case Op::Perm: return ex::perm(e.perm, kids[0]);
    case Op::Eps: return ex::eps(e.idx, kids[0]);
    case Op::Sum: return ex::sum(kids[0], kids[1]);
    case Op::IotaN: return ex::iota_n(std::move(kids));
    case Op::UpsN: return ex::ups_n(std::move(kids));
  }
  throw std::logic_error("rebuild: unknown op");
}

// ------------------------------------------------------------ printing

namespace {

std::string head_text(const Expr& e) {
  std::string s = std::string("(") + op_keyword(e.op);
  switch (e.op) {
    case Op::Omega: case Op::SigmaPow: case Op::ZetaAt: case Op::PiAt: case Op::PiPrimeAt:
      s += " " + std::to_string(e.a);
      break;
    case Op::TauSwap:
      s += " " + std::to_string(e.a) + " " + std::to_string(e.b);
      break;
    case Op::ZetaSet: case Op::Eps: {
      s += " (";
      for (size_t i = 0; i < e.idx.size(); ++i) s += (i ? " " : "") + std::to_string(e.idx[i]);
      s += ")";
      break;
    }
    case Op::Perm:
      s += " (" + (e.perm.is_identity() ? std::string() : e.perm.str()) + ")";
      break;
    default:
      break;
  }
  return s;
}

}  // namespace

std::string print_expr(const ExprPtr& root) {
  std::unordered_map<const Expr*, int> uses;
  std::vector<const Expr*> post;
  std::function<void(const Expr*)> visit = [&](const Expr* e) {
    if (uses[e]++ > 0) return;
    for (const auto& k : e->kids) visit(k.get());
    post.push_back(e);
  };
  visit(root.get());
  std::unordered_map<const Expr*, std::string> names;
  std::vector<std::pair<std::string, const Expr*>> binds;
  for (const Expr* e : post) {
    if (e != root.get() && uses[e] >= 2 && !is_leaf(e->op)) {
      std::string n = "$" + std::to_string(binds.size() + 1);
      binds.push_back({n, e});
      names[e] = n;
    }
  }
  std::function<void(const Expr*, bool, std::string&)> emit = [&](const Expr* e, bool top, std::string& out) {
    if (!top) {
      auto it = names.find(e);
      if (it != names.end()) {
        out += it->second;
        return;
      }
    }
    if (e->op == Op::Z || e->op == Op::S) {
      out += op_keyword(e->op);
      return;
    }
    if (e->op == Op::Hole) {
      out += "?" + std::to_string(e->a);
      return;
    }
    out += head_text(*e);
    for (const auto& k : e->kids) {
      out += " ";
      emit(k.get(), false, out);
    }
    out += ")";
  };
  std::string out;
  if (binds.empty()) {
    emit(root.get(), true, out);
    return out;
  }
  out += "(let (";
  for (size_t i = 0; i < binds.size(); ++i) {
    if (i) out += "\n      ";
    out += "(" + binds[i].first + " ";
    emit(binds[i].second, true, out);
    out += ")";
  }
  out += ")\n  ";
  emit(root.get(), true, out);
  out += ")";
  return out;
}

// ------------------------------------------------------------ parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  ExprPtr parse_all() {
    ExprPtr e = node();
    ws();
    if (i_ < s_.size()) fail("trailing input");
    return e;
  }

 private:
  std::string_view s_;
  size_t i_ = 0;
  std::vector<std::map<std::string, ExprPtr>> scopes_;

  [[noreturn]] void fail(const std::string& m) { throw ParseError("expr syntax: " + m, i_); }
  void ws() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }
  bool at(char ch) {
    ws();
    return i_ < s_.size() && s_[i_] == ch;
  }
  void expect(char ch) {
    if (!at(ch)) fail(std::string("expected '") + ch + "'");
    ++i_;
  }
  std::string atom() {
    ws();
    size_t st = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')')
      ++i_;
    if (st == i_) fail("expected an atom");
    return std::string(s_.substr(st, i_ - st));
  }
  int64_t integer() {
    size_t st = i_;
    std::string a = atom();
    try {
      size_t used = 0;
      int64_t v = std::stoll(a, &used);
      if (used != a.size()) throw std::invalid_argument("x");
      return v;
    } catch (const std::exception&) {
      throw ParseError("expr syntax: expected integer, got '" + a + "'", st);
    }
  }
  std::vector<int64_t> int_list() {
    expect('(');
    std::vector<int64_t> out;
    while (!at(')')) out.push_back(integer());
    ++i_;
    return out;
  }
  Permutation perm_list() {
    ws();
    if (!at('(')) fail("expected cycle list");
    size_t open = i_;
    int depth = 0;
    size_t j = i_;
    for (; j < s_.size(); ++j) {
      if (s_[j] == '(') ++depth;
      if (s_[j] == ')' && --depth == 0) break;
    }
    if (j >= s_.size()) fail("unbalanced cycle list");
    std::string inner(s_.substr(open + 1, j - open - 1));
    i_ = j + 1;
    try {
      return parse_perm(inner);
    } catch (const ParseError& e) {
      throw ParseError(std::string("expr syntax: ") + e.what(), open);
    }
  }

  ExprPtr node() {
    ws();
    if (i_ >= s_.size()) fail("unexpected end of input");
    if (s_[i_] != '(') {
      size_t st = i_;
      std::string a = atom();
      if (a == "Z") return ex::Z();
      if (a == "S") return ex::S();
      if (!a.empty() && a[0] == '$') {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
          auto f = it->find(a);
          if (f != it->end()) return f->second;
        }
        throw ParseError("expr syntax: unbound name " + a, st);
      }
      throw ParseError("expr syntax: unknown leaf '" + a + "'", st);
    }
    ++i_;
    size_t kw_pos = i_;
    std::string kw = atom();
    auto arity = [&](size_t n) {
      std::vector<ExprPtr> k;
      for (size_t t = 0; t < n; ++t) {
        if (at(')')) throw ParseError("expr syntax: arity error, '" + kw + "' takes " + std::to_string(n) + " operand(s)", i_);
        k.push_back(node());
      }
      if (!at(')')) throw ParseError("expr syntax: arity error, too many operands for '" + kw + "'", i_);
      ++i_;
      return k;
    };
    try {
      if (kw == "let") {
        expect('(');
        scopes_.emplace_back();
        while (!at(')')) {
          expect('(');
          std::string name = atom();
          if (name.empty() || name[0] != '$') fail("let names start with '$'");
          ExprPtr v = node();
          expect(')');
          scopes_.back()[name] = v;
        }
        ++i_;
        ExprPtr body = node();
        expect(')');
        scopes_.pop_back();
        return body;
      }
      if (kw == "iota") { auto k = arity(2); return ex::iota(k[0], k[1]); }
      if (kw == "ups") { auto k = arity(2); return ex::ups(k[0], k[1]); }
      if (kw == "sum") { auto k = arity(2); return ex::sum(k[0], k[1]); }
      if (kw == "rho") return ex::rho(arity(1)[0]);
      if (kw == "sigma") return ex::sigma(arity(1)[0]);
      if (kw == "tau") return ex::tau(arity(1)[0]);
      if (kw == "theta") return ex::theta(arity(1)[0]);
      if (kw == "zeta") return ex::zeta(arity(1)[0]);
      if (kw == "pi") return ex::pi(arity(1)[0]);
      if (kw == "pi'") return ex::pi_prime(arity(1)[0]);
      if (kw == "omega") { int64_t m = integer(); return ex::omega(m, arity(1)[0]); }
      if (kw == "sigma^") { int64_t m = integer(); return ex::sigma_pow(m, arity(1)[0]); }
      if (kw == "zeta-at") { int64_t m = integer(); return ex::zeta_at(m, arity(1)[0]); }
      if (kw == "pi-at") { int64_t m = integer(); return ex::pi_at(m, arity(1)[0]); }
      if (kw == "pi'-at") { int64_t m = integer(); return ex::pi_prime_at(m, arity(1)[0]); }
      if (kw == "tau-swap") {
        int64_t k = integer();
        int64_t l = integer();
        return ex::tau_swap(k, l, arity(1)[0]);
      }
      if (kw == "zeta-set") { auto s = int_list(); return ex::zeta_set(s, arity(1)[0]); }
      if (kw == "eps") { auto s = int_list(); return ex::eps(s, arity(1)[0]); }
      if (kw == "perm") { auto p = perm_list(); return ex::perm(p, arity(1)[0]); }
      if (kw == "iota*" || kw == "ups*") {
        std::vector<ExprPtr> k;
        while (!at(')')) k.push_back(node());
        ++i_;
        if (k.size() < 2) throw ParseError("expr syntax: arity error, '" + kw + "' needs at least 2 operands", i_);
        return kw == "iota*" ? ex::iota_n(k) : ex::ups_n(k);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("expr: ") + e.what(), kw_pos);
    }
    throw ParseError("expr syntax: unknown operation '" + kw + "'", kw_pos);
  }
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return ExprParser(text).parse_all(); }

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  std::set<std::pair<const Expr*, const Expr*>> done;
  std::function<bool(const Expr*, const Expr*)> eq = [&](const Expr* a, const Expr* b) {
    if (a == b) return true;
    if (done.count({a, b})) return true;
    if (a->op != b->op || a->a != b->a || a->b != b->b || a->idx != b->idx || !(a->perm == b->perm) ||
        a->kids.size() != b->kids.size())
      return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
      if (!eq(a->kids[i].get(), b->kids[i].get())) return false;
    done.insert({a, b});
    return true;
  };
  return eq(x.get(), y.get());
}

// Both walks use an explicit stack: lowered permutations nest very deeply.
size_t expr_tree_size(const ExprPtr& e) {
  std::unordered_map<const Expr*, size_t> memo;
  std::vector<std::pair<const Expr*, bool>> st{{e.get(), false}};
  while (!st.empty()) {
    auto [n, expanded] = st.back();
    st.pop_back();
    if (memo.count(n)) continue;
    if (!expanded) {
      st.push_back({n, true});
      for (const auto& k : n->kids)
        if (!memo.count(k.get())) st.push_back({k.get(), false});
      continue;
    }
    size_t s = 1;
    for (const auto& k : n->kids) {
      size_t c = memo.at(k.get());
      s = (s > SIZE_MAX - c) ? SIZE_MAX : s + c;
    }
    memo[n] = s;
  }
  return memo.at(e.get());
}

size_t expr_dag_size(const ExprPtr& e) {
  std::unordered_set<const Expr*> seen{e.get()};
  std::vector<const Expr*> st{e.get()};
  while (!st.empty()) {
    const Expr* n = st.back();
    st.pop_back();
    for (const auto& k : n->kids)
      if (seen.insert(k.get()).second) st.push_back(k.get());
  }
  return seen.size();
}

}  // namespace higman
