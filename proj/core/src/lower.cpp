#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "higman/expr.hpp"

namespace higman {

namespace {

using namespace ex;

ExprPtr shift(int64_t i, ExprPtr e) {
  if (i >= 0) {
    for (int64_t t = 0; t < i; ++t) e = sigma(e);
    return e;
  }
  return rho(shift(-i, rho(e)));
}

ExprPtr zeta_at_core(int64_t i, ExprPtr e) { return shift(i, zeta(shift(-i, e))); }

ExprPtr pi_prime_core(ExprPtr e) { return rho(pi(rho(e))); }

ExprPtr pi_at_core(int64_t i, ExprPtr e) { return shift(i, pi(shift(-i, e))); }

// Liberation strictly below i.
ExprPtr pi_prime_at_core(int64_t i, ExprPtr e) { return shift(i, pi_prime_core(shift(-i, e))); }

ExprPtr zeta_set_core(const std::vector<int64_t>& s, ExprPtr e) {
  for (auto it = s.rbegin(); it != s.rend(); ++it) e = zeta_at_core(*it, e);
  return e;
}

// sigma^k (tau sigma)^s tau (sigma^-1 tau)^s sigma^-k,  s = l-k-1
ExprPtr tau_swap_core(int64_t k, int64_t l, ExprPtr e) {
  int64_t s = l - k - 1;
  e = shift(-k, e);
  for (int64_t t = 0; t < s; ++t) e = shift(-1, tau(e));
  e = tau(e);
  for (int64_t t = 0; t < s; ++t) e = tau(sigma(e));
  return shift(k, e);
}

ExprPtr perm_core(const Permutation& p, ExprPtr e) {
  auto ts = p.transpositions();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    e = tau_swap_core(std::min(it->first, it->second), std::max(it->first, it->second), e);
  return e;
}

// Moves S (ascending) onto 0..m-1; the displaced part of 0..m-1 fills the rest of S.
Permutation extract_perm(const std::vector<int64_t>& S) {
  int64_t m = static_cast<int64_t>(S.size());
  std::map<int64_t, int64_t> mp;
  std::vector<int64_t> displaced, targets;
  std::set<int64_t> sset(S.begin(), S.end());
  for (int64_t j = 0; j < m; ++j) mp[S[j]] = j;
  for (int64_t j = 0; j < m; ++j)
    if (!sset.count(j)) displaced.push_back(j);
  for (auto i : S)
    if (i < 0 || i >= m) targets.push_back(i);
  for (size_t r = 0; r < displaced.size(); ++r) mp[displaced[r]] = targets[r];
  return Permutation::from_map(mp);
}

ExprPtr eps_core(const std::vector<int64_t>& S, ExprPtr e) {
  int64_t i1 = S.front(), im = S.back();
  std::set<int64_t> sset(S.begin(), S.end());
  std::vector<int64_t> rest;
  for (int64_t i = i1; i <= im; ++i)
    if (!sset.count(i)) rest.push_back(i);
  ExprPtr a1 = pi_prime_at_core(i1, pi_at_core(im, e));
  if (!rest.empty()) a1 = zeta_set_core(rest, a1);
  ExprPtr a2 = zeta_set_core(S, Z());
  return perm_core(extract_perm(S), iota(a1, a2));
}

ExprPtr sum_core(const Support& sa, const Support& sb, ExprPtr a, ExprPtr b) {
  std::vector<int64_t> va(sa->begin(), sa->end()), vb(sb->begin(), sb->end());
  ExprPtr x = vb.empty() ? a : zeta_set_core(vb, a);
  ExprPtr y = va.empty() ? b : zeta_set_core(va, b);
  return iota(x, y);
}

// One level of lowering for node e with already-lowered children.
ExprPtr lower_node(const Expr& e, const std::vector<ExprPtr>& k) {
  switch (e.op) {
    case Op::SigmaPow: return shift(e.a, k[0]);
    case Op::ZetaAt: return zeta_at_core(e.a, k[0]);
    case Op::ZetaSet: return zeta_set_core(e.idx, k[0]);
    case Op::PiPrime: return pi_prime_core(k[0]);
    case Op::PiAt: return pi_at_core(e.a, k[0]);
    case Op::PiPrimeAt: return pi_prime_at_core(e.a, k[0]);
    case Op::TauSwap: return tau_swap_core(e.a, e.b, k[0]);
    case Op::Perm: return perm_core(e.perm, k[0]);
    case Op::Eps: return eps_core(e.idx, k[0]);
    case Op::Sum: return sum_core(e.kids[0]->support, e.kids[1]->support, k[0], k[1]);
    case Op::IotaN: {
      ExprPtr acc = iota(k[0], k[1]);
      for (size_t i = 2; i < k.size(); ++i) acc = iota(acc, k[i]);
      return acc;
    }
    case Op::UpsN: {
      ExprPtr acc = ups(k[0], k[1]);
      for (size_t i = 2; i < k.size(); ++i) acc = ups(acc, k[i]);
      return acc;
    }
    default:
      return rebuild(e, k);
  }
}

Window relocate(const Window& W, const std::function<int64_t(int64_t)>& child_pos) {
  Window out{child_pos(W.lo), child_pos(W.lo)};
  for (int64_t j = W.lo; j <= W.hi; ++j) {
    int64_t p = child_pos(j);
    out.lo = std::min(out.lo, p);
    out.hi = std::max(out.hi, p);
  }
  return out;
}

std::vector<Window> core_child_windows(const Expr& e, const Window& W, int64_t s) {
  switch (e.op) {
    case Op::Z: case Op::S: case Op::Hole: return {};
    case Op::Iota: case Op::Ups: return {W, W};
    case Op::Rho: return {{-W.hi, -W.lo}};
    case Op::Sigma: return {{W.lo - 1, W.hi - 1}};
    case Op::Tau: return {relocate(W, [](int64_t j) { return j == 0 ? 1 : j == 1 ? 0 : j; })};
    case Op::Theta: return {{2 * W.lo - s, 2 * W.hi + s}};
    case Op::Zeta: return {hull(W, {0, 0})};
    case Op::Pi: return {{std::min(W.lo, int64_t{0}), std::max(W.hi, int64_t{0}) + s}};
    case Op::Omega: return {{0, e.a - 1}};
    default: throw std::logic_error("core_child_windows on auxiliary node");
  }
}

struct TemplateCache {
  std::mutex mu;
  std::map<std::string, std::vector<Window>> m;
};
TemplateCache& template_cache() {
  static TemplateCache c;
  return c;
}

std::string template_key(const Expr& e, const Window& W, int64_t s) {
  std::string k = std::string(op_keyword(e.op)) + "|" + std::to_string(e.a) + "|" + std::to_string(e.b) + "|";
  for (auto i : e.idx) k += std::to_string(i) + ",";
  k += "|" + e.perm.str() + "|" + std::to_string(e.kids.size()) + "|" + W.str() + "|" + std::to_string(s);
  if (e.op == Op::Sum) k += "|" + support_str(e.kids[0]->support) + "|" + support_str(e.kids[1]->support);
  return k;
}

}  // namespace

ExprPtr lower(const ExprPtr& root) {
  std::unordered_map<const Expr*, ExprPtr> memo;
  std::function<ExprPtr(const ExprPtr&)> go = [&](const ExprPtr& e) -> ExprPtr {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    std::vector<ExprPtr> k;
    bool same = true;
    for (const auto& c : e->kids) {
      k.push_back(go(c));
      same = same && k.back() == c;
    }
    ExprPtr out;
    if (is_core(e->op) || e->op == Op::Hole)
      out = same ? e : rebuild(*e, k);
    else
      out = lower_node(*e, k);
    memo[e.get()] = out;
    return out;
  };
  return go(root);
}

bool is_core_only(const ExprPtr& e) {
  std::unordered_map<const Expr*, bool> memo;
  std::function<bool(const Expr*)> go = [&](const Expr* n) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    bool ok = is_core(n->op);
    for (const auto& k : n->kids) ok = ok && go(k.get());
    return memo[n] = ok;
  };
  return go(e.get());
}

std::vector<Window> child_windows(const Expr& e, const Window& W, const WindowOptions& opt) {
  if (is_core(e.op) || e.op == Op::Hole) return core_child_windows(e, W, opt.witness_slack);
  if (e.op == Op::IotaN || e.op == Op::UpsN) return std::vector<Window>(e.kids.size(), W);
  std::string key = template_key(e, W, opt.witness_slack);
  {
    std::lock_guard<std::mutex> g(template_cache().mu);
    auto it = template_cache().m.find(key);
    if (it != template_cache().m.end()) return it->second;
  }
  std::vector<ExprPtr> holes;
  for (size_t i = 0; i < e.kids.size(); ++i) holes.push_back(ex::hole(static_cast<int64_t>(i)));
  ExprPtr tmpl = lower_node(e, holes);
  std::vector<std::optional<Window>> acc(e.kids.size());
  std::function<void(const Expr&, const Window&)> walk = [&](const Expr& n, const Window& w) {
    if (n.op == Op::Hole) {
      auto& slot = acc[static_cast<size_t>(n.a)];
      slot = slot ? hull(*slot, w) : w;
      return;
    }
    auto cw = core_child_windows(n, w, opt.witness_slack);
    for (size_t i = 0; i < n.kids.size(); ++i) walk(*n.kids[i], cw[i]);
  };
  walk(*tmpl, W);
  std::vector<Window> out;
  for (auto& a : acc) out.push_back(a.value_or(W));
  std::lock_guard<std::mutex> g(template_cache().mu);
  template_cache().m[key] = out;
  return out;
}

std::vector<std::pair<const Expr*, Window>> infer_window(const ExprPtr& e, const Window& W,
                                                         const WindowOptions& opt) {
  std::vector<std::pair<const Expr*, Window>> out;
  std::set<std::pair<const Expr*, Window>> seen;
  std::function<void(const Expr*, const Window&)> go = [&](const Expr* n, const Window& w) {
    if (!seen.insert({n, w}).second) return;
    out.push_back({n, w});
    auto cw = child_windows(*n, w, opt);
    for (size_t i = 0; i < n->kids.size(); ++i) go(n->kids[i].get(), cw[i]);
  };
  go(e.get(), W);
  return out;
}

}  // namespace higman
