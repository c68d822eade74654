// Brute-force bounded evaluation, used as an oracle for the symbolic evaluator.
//
// Every set is a list of vectors over the node window. A coordinate may hold the
// WILD marker, meaning "any value within the internal magnitude"; liberations
// produce it so that they do not multiply the set size. The set operations only
// copy or relocate values, so every value ever seen is bounded by the leaves.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>

#include "higman/heval.hpp"

namespace higman {

namespace {

using EV = std::vector<int16_t>;
using ESet = std::vector<EV>;
constexpr int16_t WILD = INT16_MIN;

bool zero_ok(int16_t v) { return v == 0 || v == WILD; }

struct EVHash {
  size_t operator()(const EV& v) const {
    size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<uint16_t>(x)) * 1099511628211ull;
    return h;
  }
};

uint64_t wild_mask(const EV& v) {
  uint64_t m = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] == WILD) m |= uint64_t{1} << i;
  return m;
}

void normalize(ESet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// child position -> node position
int64_t reloc_to_node(const Expr& e, int64_t p) {
  switch (e.op) {
    case Op::Sigma: return p + 1;
    case Op::Rho: return -p;
    case Op::Tau: return p == 0 ? 1 : p == 1 ? 0 : p;
    case Op::SigmaPow: return p + e.a;
    case Op::TauSwap: return p == e.a ? e.b : p == e.b ? e.a : p;
    default: return e.perm(p);
  }
}

class EnumEval {
 public:
  EnumEval(int64_t mi, const EvalOptions& opt) : mi_(mi), opt_(opt) {}

  const ESet& eval(const Expr* e, const Window& W) {
    if (W.width() > 64) throw std::invalid_argument("enumerative evaluation supports windows up to width 64");
    auto key = std::make_pair(e, W);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ESet s = compute(e, W);
    normalize(s);
    produced_ += s.size();
    if (produced_ > opt_.enum_budget)
      throw CapExceeded("enumeration budget " + std::to_string(opt_.enum_budget) + " exceeded at " +
                        op_keyword(e->op) + " over " + W.str());
    return memo_.emplace(key, std::move(s)).first->second;
  }

 private:
  int64_t mi_;
  const EvalOptions& opt_;
  size_t produced_ = 0;
  std::map<std::pair<const Expr*, Window>, ESet> memo_;

  void charge(size_t n) {
    if (n > opt_.enum_budget) throw CapExceeded("enumeration budget exceeded");
  }

  static size_t ix(const Window& W, int64_t j) { return static_cast<size_t>(j - W.lo); }

  ESet join(const ESet& A, const ESet& B) {
    std::map<uint64_t, std::vector<const EV*>> ga, gb;
    for (const auto& a : A) ga[wild_mask(a)].push_back(&a);
    for (const auto& b : B) gb[wild_mask(b)].push_back(&b);
    ESet out;
    for (const auto& [ma, va] : ga)
      for (const auto& [mb, vb] : gb) {
        uint64_t both = ma | mb;
        size_t n = va.front()->size();
        auto key = [&](const EV& v) {
          EV k;
          for (size_t i = 0; i < n; ++i)
            if (!(both >> i & 1)) k.push_back(v[i]);
          return k;
        };
        std::unordered_map<EV, std::vector<const EV*>, EVHash> h;
        for (auto* b : vb) h[key(*b)].push_back(b);
        for (auto* a : va) {
          auto f = h.find(key(*a));
          if (f == h.end()) continue;
          for (auto* b : f->second) {
            EV r(n);
            for (size_t i = 0; i < n; ++i) r[i] = (*a)[i] != WILD ? (*a)[i] : (*b)[i];
            out.push_back(std::move(r));
            charge(out.size());
          }
        }
      }
    return out;
  }

  // Generic single-child map: node position j reads child position src(j)
  // (nullopt = liberated). Child positions nobody reads and that fall outside
  // the node window must vanish; liberated-only child positions are free.
  template <class Src, class Free>
  ESet remap(const Expr* e, const Window& W, const Src& src, const Free& child_free) {
    Window Wc = child_windows(*e, W, opt_.window)[0];
    const ESet& G = eval(e->kids[0].get(), Wc);
    std::vector<bool> read(static_cast<size_t>(Wc.width()), false);
    for (int64_t j = W.lo; j <= W.hi; ++j) {
      auto p = src(j);
      if (p && Wc.contains(*p)) read[ix(Wc, *p)] = true;
    }
    ESet out;
    for (const auto& g : G) {
      bool ok = true;
      for (int64_t p = Wc.lo; p <= Wc.hi && ok; ++p)
        if (!read[ix(Wc, p)] && !child_free(p) && !zero_ok(g[ix(Wc, p)])) ok = false;
      if (!ok) continue;
      EV f(static_cast<size_t>(W.width()), 0);
      for (int64_t j = W.lo; j <= W.hi; ++j) {
        auto p = src(j);
        if (!p)
          f[ix(W, j)] = WILD;
        else if (Wc.contains(*p))
          f[ix(W, j)] = g[ix(Wc, *p)];
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  ESet liberation(const Expr* e, const Window& W, const std::function<bool(int64_t)>& lib) {
    return remap(
        e, W, [&](int64_t j) -> std::optional<int64_t> { if (lib(j)) return std::nullopt; return j; }, lib);
  }

  ESet compute(const Expr* e, const Window& W) {
    size_t n = static_cast<size_t>(W.width());
    switch (e->op) {
      case Op::Z: return {EV(n, 0)};
      case Op::S: {
        ESet out;
        for (int64_t v = -mi_; v < mi_; ++v) {
          if (!W.contains(0) && v != 0) continue;
          if (!W.contains(1) && v + 1 != 0) continue;
          EV f(n, 0);
          if (W.contains(0)) f[ix(W, 0)] = static_cast<int16_t>(v);
          if (W.contains(1)) f[ix(W, 1)] = static_cast<int16_t>(v + 1);
          out.push_back(std::move(f));
        }
        return out;
      }
      case Op::Iota: case Op::IotaN: {
        ESet acc = eval(e->kids[0].get(), W);
        for (size_t i = 1; i < e->kids.size(); ++i) {
          acc = join(acc, eval(e->kids[i].get(), W));
          normalize(acc);
        }
        return acc;
      }
      case Op::Ups: case Op::UpsN: {
        ESet acc;
        for (const auto& k : e->kids) {
          const auto& s = eval(k.get(), W);
          acc.insert(acc.end(), s.begin(), s.end());
        }
        return acc;
      }
      case Op::Sigma: case Op::Rho: case Op::Tau: case Op::SigmaPow: case Op::TauSwap: case Op::Perm: {
        Window Wc = child_windows(*e, W, opt_.window)[0];
        std::map<int64_t, int64_t> inv;
        for (int64_t p = Wc.lo; p <= Wc.hi; ++p) inv[reloc_to_node(*e, p)] = p;
        // node positions whose preimage lies outside Wc read a zero
        return remap(
            e, W,
            [&](int64_t j) -> std::optional<int64_t> {
              auto it = inv.find(j);
              return it == inv.end() ? Wc.hi + 1 : it->second;
            },
            [](int64_t) { return false; });
      }
      case Op::Theta:
        return remap(
            e, W, [](int64_t j) -> std::optional<int64_t> { return 2 * j; },
            [](int64_t p) { return p % 2 != 0; });
      case Op::Zeta: return liberation(e, W, [](int64_t p) { return p == 0; });
      case Op::ZetaAt: return liberation(e, W, [e](int64_t p) { return p == e->a; });
      case Op::ZetaSet:
        return liberation(e, W, [e](int64_t p) { return std::binary_search(e->idx.begin(), e->idx.end(), p); });
      case Op::Pi: return liberation(e, W, [](int64_t p) { return p > 0; });
      case Op::PiAt: return liberation(e, W, [e](int64_t p) { return p > e->a; });
      case Op::PiPrime: return liberation(e, W, [](int64_t p) { return p < 0; });
      case Op::PiPrimeAt: return liberation(e, W, [e](int64_t p) { return p < e->a; });
      case Op::Eps: {
        int64_t m = static_cast<int64_t>(e->idx.size());
        Window Wc = child_windows(*e, W, opt_.window)[0];
        return remap(
            e, W,
            [&](int64_t j) -> std::optional<int64_t> {
              if (j >= 0 && j < m) return e->idx[static_cast<size_t>(j)];
              return Wc.hi + 1;  // outside the child window: reads zero
            },
            [e](int64_t p) { return !std::binary_search(e->idx.begin(), e->idx.end(), p); });
      }
      case Op::Omega: return omega(e, W);
      case Op::Sum: return sum(e, W);
      case Op::Hole: break;
    }
    throw std::logic_error("cannot enumerate a template hole");
  }

  ESet omega(const Expr* e, const Window& W) {
    int64_t m = e->a;
    Window Wc{0, m - 1};
    const ESet& G = eval(e->kids[0].get(), Wc);
    bool has_zero = std::any_of(G.begin(), G.end(), [](const EV& g) {
      return std::all_of(g.begin(), g.end(), zero_ok);
    });
    if (!has_zero) return {};
    ESet acc{EV(static_cast<size_t>(W.width()), 0)};
    for (int64_t q = floor_div(W.lo, m); q <= floor_div(W.hi, m); ++q) {
      std::vector<EV> choices;
      for (const auto& g : G) {
        bool ok = true;
        for (int64_t p = 0; p < m && ok; ++p)
          if (!W.contains(q * m + p) && !zero_ok(g[static_cast<size_t>(p)])) ok = false;
        if (ok) choices.push_back(g);
      }
      ESet next;
      for (const auto& f : acc)
        for (const auto& g : choices) {
          EV r = f;
          for (int64_t p = 0; p < m; ++p)
            if (W.contains(q * m + p)) r[ix(W, q * m + p)] = g[static_cast<size_t>(p)];
          next.push_back(std::move(r));
          charge(next.size());
        }
      normalize(next);
      acc = std::move(next);
    }
    return acc;
  }

  ESet sum(const Expr* e, const Window& W) {
    auto wins = child_windows(*e, W, opt_.window);
    const auto& SA = *e->kids[0]->support;
    const auto& SB = *e->kids[1]->support;
    auto part = [&](const ESet& X, const Window& Wc, const std::set<int64_t>& supp) {
      ESet out;
      for (const auto& x : X) {
        bool ok = true;
        for (int64_t p = Wc.lo; p <= Wc.hi && ok; ++p)
          if (supp.count(p) && !W.contains(p) && !zero_ok(x[ix(Wc, p)])) ok = false;
        if (!ok) continue;
        EV f(static_cast<size_t>(W.width()), 0);
        for (int64_t j = W.lo; j <= W.hi; ++j)
          if (supp.count(j)) f[ix(W, j)] = Wc.contains(j) ? x[ix(Wc, j)] : 0;
        out.push_back(std::move(f));
      }
      normalize(out);
      return out;
    };
    ESet A = part(eval(e->kids[0].get(), wins[0]), wins[0], SA);
    ESet B = part(eval(e->kids[1].get(), wins[1]), wins[1], SB);
    ESet out;
    for (const auto& a : A)
      for (const auto& b : B) {
        EV f(a.size());
        for (int64_t j = W.lo; j <= W.hi; ++j) f[ix(W, j)] = SA.count(j) ? a[ix(W, j)] : b[ix(W, j)];
        out.push_back(std::move(f));
        charge(out.size());
      }
    return out;
  }
};

}  // namespace

SeqSet eval_enum(const ExprPtr& e, const Window& W, int64_t M, const EvalOptions& opt) {
  if (M < 0) throw std::invalid_argument("magnitude bound must be nonnegative");
  int64_t mi = M + opt.enum_mag_slack;
  if (mi > 10000) throw std::invalid_argument("magnitude bound too large for enumeration");
  EnumEval ev(mi, opt);
  const ESet& s = ev.eval(e.get(), W);
  SeqSet out;
  size_t n = static_cast<size_t>(W.width());
  for (const auto& v : s) {
    bool ok = true;
    for (auto x : v)
      if (x != WILD && (x < -M || x > M)) ok = false;
    if (!ok) continue;
    Vec cur(n);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == n) {
        out.insert(Seq(W.lo, cur));
        if (out.size() > opt.enum_budget) throw CapExceeded("enumeration budget exceeded");
        return;
      }
      if (v[i] != WILD) {
        cur[i] = v[i];
        rec(i + 1);
        return;
      }
      for (int64_t x = -M; x <= M; ++x) {
        cur[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace higman
