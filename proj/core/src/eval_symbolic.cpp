// Symbolic window evaluation over affine lattices.
//
// The workhorse is E(node, W, Q, K): given a query Q (one affine row per position
// of W, in some parameters z) and a "keep" map K (affine rows in the same z), it
// returns the set { K(z) : Q(z) is in the denotation of node over W } as a union
// of canonical lattices. Everything else (plain evaluation, membership,
// projections) is a special choice of Q and K. Intersections, sequence building
// and coordinate relocations are flattened into one list of conjuncts that is
// solved left to right while only the still-needed coordinates are carried.

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "higman/heval.hpp"

namespace higman {

namespace {

struct AffRows {
  Vec b;
  Mat C;
  size_t rows() const { return b.size(); }
  size_t params() const { return C.cols; }
  AffRows select(const std::vector<size_t>& rs) const {
    AffRows r;
    for (auto i : rs) r.b.push_back(b[i]);
    r.C = C.select_rows(rs);
    return r;
  }
};

AffRows stack(const AffRows& x, const AffRows& y) {
  AffRows r;
  r.b = x.b;
  r.b.insert(r.b.end(), y.b.begin(), y.b.end());
  r.C = x.C.vcat(y.C);
  return r;
}

AffRows from_lattice(const Lattice& L) { return {L.b, L.H}; }

AffRows add_zero_cols(const AffRows& a, size_t n) {
  AffRows r = a;
  r.C = a.C.hcat(Mat(a.rows(), n));
  return r;
}

// Substitute z = x0 + N w.
AffRows compose(const AffRows& a, const Solution& s) {
  AffRows r;
  Vec cx = a.C.mul(s.x0);
  r.b.resize(a.rows());
  for (size_t i = 0; i < a.rows(); ++i) r.b[i] = checked_add(a.b[i], cx[i]);
  r.C = a.C.mul(s.K);
  return r;
}

Lattice image(const AffRows& K, const Solution& s) {
  AffRows r = compose(K, s);
  return make_lattice(r.b, r.C);
}

struct Key {
  const Expr* e;
  Window w;
  size_t nq;
  Lattice joint;
  bool operator==(const Key& o) const { return e == o.e && w == o.w && nq == o.nq && joint == o.joint; }
};
struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = std::hash<const void*>()(k.e);
    h ^= k.joint.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<int64_t>()(k.w.lo * 1000003 + k.w.hi) + (h << 6) + (h >> 2);
    return h ^ k.nq;
  }
};

struct PlainKey {
  const Expr* e;
  Window w;
  bool operator==(const PlainKey& o) const { return e == o.e && w == o.w; }
};
struct PlainKeyHash {
  size_t operator()(const PlainKey& k) const {
    return std::hash<const void*>()(k.e) ^ std::hash<int64_t>()(k.w.lo * 1000003 + k.w.hi);
  }
};

std::string node_desc(const Expr* e, const Window& W) {
  return std::string(op_keyword(e->op)) + " over " + W.str();
}

bool is_relocation(Op op) {
  return op == Op::Sigma || op == Op::Rho || op == Op::Tau || op == Op::SigmaPow || op == Op::TauSwap ||
         op == Op::Perm;
}

// child position -> node position
int64_t reloc_fwd(const Expr& e, int64_t p) {
  switch (e.op) {
    case Op::Sigma: return p + 1;
    case Op::Rho: return -p;
    case Op::Tau: return p == 0 ? 1 : p == 1 ? 0 : p;
    case Op::SigmaPow: return p + e.a;
    case Op::TauSwap: return p == e.a ? e.b : p == e.b ? e.a : p;
    case Op::Perm: return e.perm(p);
    default: throw std::logic_error("not a relocation");
  }
}

int64_t reloc_inv(const Expr& e, int64_t j) {
  switch (e.op) {
    case Op::Sigma: return j - 1;
    case Op::Rho: return -j;
    case Op::Tau: return j == 0 ? 1 : j == 1 ? 0 : j;
    case Op::SigmaPow: return j - e.a;
    case Op::TauSwap: return j == e.a ? e.b : j == e.b ? e.a : j;
    case Op::Perm: return e.perm.inverse()(j);
    default: throw std::logic_error("not a relocation");
  }
}

struct Conj {
  const Expr* node;
  Window w;
  std::vector<int> rows;  // per child position: root row or -1 for constant zero
  bool block;
};

struct Src {
  enum Kind { Node, Zero, Fresh } k;
  int64_t j = 0;
};

}  // namespace

class SymEval {
 public:
  explicit SymEval(const EvalOptions& o) : opt_(o) {}

  // K is first reduced to an integer row basis of its dependence on the
  // parameters Q actually reads; the rest of K is a free translate.
  std::vector<Lattice> E(const Expr* e, const Window& W, const AffRows& Q, const AffRows& K) {
    size_t np = Q.params(), nk = K.rows();
    if (nk == 0) return E_reduced(e, W, Q, K);
    std::vector<size_t> used, unused;
    for (size_t k = 0; k < np; ++k) {
      bool u = false;
      for (size_t i = 0; i < Q.rows() && !u; ++i) u = Q.C(i, k) != 0;
      (u ? used : unused).push_back(k);
    }
    Mat M(used.size(), nk);  // transpose of K on the used columns
    for (size_t a = 0; a < used.size(); ++a)
      for (size_t i = 0; i < nk; ++i) M(a, i) = K.C(i, used[a]);
    std::vector<size_t> piv;
    size_t rg = column_hnf(M, nullptr, &piv);
    // K rows on used columns = T * G with G = first rg columns of M, transposed.
    Mat T(nk, rg);
    for (size_t i = 0; i < nk; ++i) {
      for (size_t j = 0; j < rg; ++j) {
        int64_t v = K.C(i, used[piv[j]]);
        for (size_t l = 0; l < j; ++l) v = checked_add(v, -checked_mul(M(piv[j], l), T(i, l)));
        if (v % M(piv[j], j) != 0) throw std::logic_error("keep basis: inexact division");
        T(i, j) = v / M(piv[j], j);
      }
    }
    AffRows G{Vec(rg, 0), Mat(rg, np)};
    for (size_t j = 0; j < rg; ++j)
      for (size_t a = 0; a < used.size(); ++a) G.C(j, used[a]) = M(a, j);
    std::vector<size_t> free_cols;
    for (size_t k : unused) {
      bool nz = false;
      for (size_t i = 0; i < nk && !nz; ++i) nz = K.C(i, k) != 0;
      if (nz) free_cols.push_back(k);
    }
    std::vector<Lattice> out;
    for (const auto& L : E_reduced(e, W, Q, G)) {
      Vec b = K.b;
      Vec tb = T.mul(L.b);
      for (size_t i = 0; i < nk; ++i) b[i] = checked_add(b[i], tb[i]);
      Mat TH = T.mul(L.H);
      Mat C(nk, TH.cols + free_cols.size());
      for (size_t i = 0; i < nk; ++i) {
        for (size_t k = 0; k < TH.cols; ++k) C(i, k) = TH(i, k);
        for (size_t f = 0; f < free_cols.size(); ++f) C(i, TH.cols + f) = K.C(i, free_cols[f]);
      }
      out.push_back(make_lattice(std::move(b), std::move(C)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Lattice> E_reduced(const Expr* e, const Window& W, const AffRows& Q, const AffRows& K) {
    Lattice joint = make_lattice(stack(Q, K).b, stack(Q, K).C);
    Key key{e, W, Q.rows(), joint};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<size_t> qi, ki;
    for (size_t i = 0; i < Q.rows(); ++i) qi.push_back(i);
    for (size_t i = 0; i < K.rows(); ++i) ki.push_back(Q.rows() + i);
    AffRows J = from_lattice(joint);
    std::vector<Lattice> out = dispatch(e, W, J.select(qi), J.select(ki));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > opt_.pattern_cap)
      throw CapExceeded("pattern cap " + std::to_string(opt_.pattern_cap) + " exceeded at " + node_desc(e, W));
    memo_.emplace(std::move(key), out);
    return out;
  }

  const std::vector<Lattice>& plain(const Expr* e, const Window& W) {
    PlainKey k{e, W};
    auto it = plain_.find(k);
    if (it != plain_.end()) return it->second;
    size_t n = static_cast<size_t>(W.width());
    AffRows I{Vec(n, 0), Mat::identity(n)};
    auto res = E(e, W, I, I);
    return plain_.emplace(k, std::move(res)).first->second;
  }

  bool contains_zero(const Expr* e, const Window& W) {
    AffRows Q{Vec(static_cast<size_t>(W.width()), 0), Mat(static_cast<size_t>(W.width()), 0)};
    AffRows K{Vec(), Mat(0, 0)};
    return !E(e, W, Q, K).empty();
  }

 private:
  const EvalOptions& opt_;
  std::unordered_map<Key, std::vector<Lattice>, KeyHash> memo_;
  std::unordered_map<PlainKey, std::vector<Lattice>, PlainKeyHash> plain_;

  std::vector<Window> cw(const Expr* e, const Window& W) { return child_windows(*e, W, opt_.window); }

  // Restrict to parameters where the given node rows vanish.
  static bool constrain_zero(AffRows& Q, AffRows& K, const std::vector<size_t>& rows) {
    if (rows.empty()) return true;
    AffRows sub = Q.select(rows);
    Vec c(sub.b.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = -sub.b[i];
    auto s = solve_integer(sub.C, c);
    if (!s) return false;
    Q = compose(Q, *s);
    K = compose(K, *s);
    return true;
  }

  std::vector<Lattice> dispatch(const Expr* e, const Window& W, AffRows Q, AffRows K) {
    switch (e->op) {
      case Op::Z: {
        Vec c(Q.rows());
        for (size_t i = 0; i < c.size(); ++i) c[i] = -Q.b[i];
        auto s = solve_integer(Q.C, c);
        if (!s) return {};
        return {image(K, *s)};
      }
      case Op::S: return leaf_S(W, Q, K);
      case Op::Ups:
      case Op::UpsN: {
        std::vector<Lattice> out;
        for (const auto& k : e->kids) {
          auto r = E(k.get(), W, Q, K);
          out.insert(out.end(), r.begin(), r.end());
        }
        return out;
      }
      case Op::Iota: case Op::IotaN: case Op::Omega:
      case Op::Sigma: case Op::Rho: case Op::Tau: case Op::SigmaPow: case Op::TauSwap: case Op::Perm:
        return fused(e, W, Q, K);
      case Op::Zeta: return liberate(e, W, Q, K, [](int64_t p) { return p == 0; });
      case Op::ZetaAt: return liberate(e, W, Q, K, [e](int64_t p) { return p == e->a; });
      case Op::ZetaSet:
        return liberate(e, W, Q, K, [e](int64_t p) { return std::binary_search(e->idx.begin(), e->idx.end(), p); });
      case Op::Pi: return liberate(e, W, Q, K, [](int64_t p) { return p > 0; });
      case Op::PiAt: return liberate(e, W, Q, K, [e](int64_t p) { return p > e->a; });
      case Op::PiPrime: return liberate(e, W, Q, K, [](int64_t p) { return p < 0; });
      case Op::PiPrimeAt: return liberate(e, W, Q, K, [e](int64_t p) { return p < e->a; });
      case Op::Theta: {
        Window Wc = cw(e, W)[0];
        std::vector<Src> src;
        for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
          if (p % 2 != 0)
            src.push_back({Src::Fresh});
          else
            src.push_back(W.contains(p / 2) ? Src{Src::Node, p / 2} : Src{Src::Zero});
        }
        std::vector<size_t> must;
        for (int64_t j = W.lo; j <= W.hi; ++j)
          if (!Wc.contains(2 * j)) must.push_back(static_cast<size_t>(j - W.lo));
        return via_child(e->kids[0].get(), Wc, src, must, W, Q, K);
      }
      case Op::Eps: {
        Window Wc = cw(e, W)[0];
        int64_t m = static_cast<int64_t>(e->idx.size());
        std::vector<Src> src;
        for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
          auto it = std::lower_bound(e->idx.begin(), e->idx.end(), p);
          if (it != e->idx.end() && *it == p) {
            int64_t r = it - e->idx.begin();
            src.push_back(W.contains(r) ? Src{Src::Node, r} : Src{Src::Zero});
          } else {
            src.push_back({Src::Fresh});
          }
        }
        std::vector<size_t> must;
        for (int64_t j = W.lo; j <= W.hi; ++j)
          if (j < 0 || j >= m || !Wc.contains(e->idx[static_cast<size_t>(j)]))
            must.push_back(static_cast<size_t>(j - W.lo));
        return via_child(e->kids[0].get(), Wc, src, must, W, Q, K);
      }
      case Op::Sum: return sum(e, W, Q, K);
      case Op::Hole: throw std::logic_error("cannot evaluate a template hole");
    }
    throw std::logic_error("unknown op");
  }

  std::vector<Lattice> leaf_S(const Window& W, const AffRows& Q, const AffRows& K) {
    size_t n = Q.params();
    std::vector<std::vector<int64_t>> rows;
    Vec c;
    for (int64_t j = W.lo; j <= W.hi; ++j) {
      std::vector<int64_t> r(n + 1, 0);
      size_t i = static_cast<size_t>(j - W.lo);
      for (size_t k = 0; k < n; ++k) r[k] = Q.C(i, k);
      int64_t cst = 0;
      if (j == 0 || j == 1) r[n] = -1;
      if (j == 1) cst = 1;
      rows.push_back(r);
      c.push_back(checked_add(cst, -Q.b[i]));
    }
    if (!W.contains(0)) {
      std::vector<int64_t> r(n + 1, 0);
      r[n] = 1;
      rows.push_back(r);
      c.push_back(0);
    }
    if (!W.contains(1)) {
      std::vector<int64_t> r(n + 1, 0);
      r[n] = 1;
      rows.push_back(r);
      c.push_back(-1);
    }
    Mat A(rows.size(), n + 1);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t k = 0; k <= n; ++k) A(i, k) = rows[i][k];
    auto s = solve_integer(A, c);
    if (!s) return {};
    return {image(add_zero_cols(K, 1), *s)};
  }

  std::vector<Lattice> via_child(const Expr* child, const Window& Wc, const std::vector<Src>& src,
                                 const std::vector<size_t>& must_zero, const Window& W, AffRows Q, AffRows K) {
    if (!constrain_zero(Q, K, must_zero)) return {};
    size_t fresh = 0;
    for (const auto& s : src) fresh += s.k == Src::Fresh;
    size_t n = Q.params();
    AffRows Qc{Vec(src.size(), 0), Mat(src.size(), n + fresh)};
    size_t f = 0;
    for (size_t p = 0; p < src.size(); ++p) {
      if (src[p].k == Src::Node) {
        size_t i = static_cast<size_t>(src[p].j - W.lo);
        Qc.b[p] = Q.b[i];
        for (size_t k = 0; k < n; ++k) Qc.C(p, k) = Q.C(i, k);
      } else if (src[p].k == Src::Fresh) {
        Qc.C(p, n + f++) = 1;
      }
    }
    return E(child, Wc, Qc, add_zero_cols(K, fresh));
  }

  std::vector<Lattice> liberate(const Expr* e, const Window& W, const AffRows& Q, const AffRows& K,
                                const std::function<bool(int64_t)>& lib) {
    Window Wc = cw(e, W)[0];
    std::vector<Src> src;
    for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
      if (lib(p))
        src.push_back({Src::Fresh});
      else
        src.push_back(W.contains(p) ? Src{Src::Node, p} : Src{Src::Zero});
    }
    std::vector<size_t> must;
    for (int64_t j = W.lo; j <= W.hi; ++j)
      if (!lib(j) && !Wc.contains(j)) must.push_back(static_cast<size_t>(j - W.lo));
    return via_child(e->kids[0].get(), Wc, src, must, W, Q, K);
  }

  std::vector<Lattice> sum(const Expr* e, const Window& W, AffRows Q, AffRows K) {
    const auto& SA = *e->kids[0]->support;
    const auto& SB = *e->kids[1]->support;
    auto wins = cw(e, W);
    std::vector<size_t> must, brows;
    for (int64_t j = W.lo; j <= W.hi; ++j) {
      size_t i = static_cast<size_t>(j - W.lo);
      if (SB.count(j))
        brows.push_back(i);
      else if (!SA.count(j))
        must.push_back(i);
    }
    if (!constrain_zero(Q, K, must)) return {};
    auto part_query = [&](const AffRows& rowsrc, const std::set<int64_t>& supp, const Window& Wc,
                          const std::function<int64_t(int64_t)>& row_of) {
      AffRows q{Vec(static_cast<size_t>(Wc.width()), 0), Mat(static_cast<size_t>(Wc.width()), rowsrc.params())};
      for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
        if (!supp.count(p) || !W.contains(p)) continue;
        int64_t r = row_of(p);
        size_t t = static_cast<size_t>(p - Wc.lo);
        q.b[t] = rowsrc.b[static_cast<size_t>(r)];
        for (size_t k = 0; k < rowsrc.params(); ++k) q.C(t, k) = rowsrc.C(static_cast<size_t>(r), k);
      }
      return q;
    };
    AffRows QA = part_query(Q, SA, wins[0], [&](int64_t p) { return p - W.lo; });
    AffRows state = stack(K, Q.select(brows));
    std::map<int64_t, int64_t> brow_index;
    for (size_t t = 0; t < brows.size(); ++t) brow_index[static_cast<int64_t>(brows[t]) + W.lo] = static_cast<int64_t>(K.rows() + t);
    std::vector<Lattice> out;
    for (const auto& L : E(e->kids[0].get(), wins[0], QA, state)) {
      AffRows S = from_lattice(L);
      AffRows QB = part_query(S, SB, wins[1], [&](int64_t p) { return brow_index.at(p); });
      std::vector<size_t> krows;
      for (size_t t = 0; t < K.rows(); ++t) krows.push_back(t);
      auto r = E(e->kids[1].get(), wins[1], QB, S.select(krows));
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  void flatten(const Expr* e, const Window& Wn, const std::vector<int>& pos, std::vector<Conj>& conj,
               std::set<int>& must_zero, std::set<std::pair<const Expr*, int64_t>>& zero_checks) {
    if (e->op == Op::Iota || e->op == Op::IotaN) {
      for (const auto& k : e->kids) flatten(k.get(), Wn, pos, conj, must_zero, zero_checks);
      return;
    }
    if (is_relocation(e->op)) {
      Window Wc = cw(e, Wn)[0];
      std::vector<int> cpos;
      for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
        int64_t j = reloc_fwd(*e, p);
        cpos.push_back(Wn.contains(j) ? pos[static_cast<size_t>(j - Wn.lo)] : -1);
      }
      for (int64_t j = Wn.lo; j <= Wn.hi; ++j) {
        int r = pos[static_cast<size_t>(j - Wn.lo)];
        if (r >= 0 && !Wc.contains(reloc_inv(*e, j))) must_zero.insert(r);
      }
      flatten(e->kids[0].get(), Wc, cpos, conj, must_zero, zero_checks);
      return;
    }
    if (e->op == Op::Omega) {
      int64_t m = e->a;
      zero_checks.insert({e->kids[0].get(), m});
      int64_t q0 = floor_div(Wn.lo, m), q1 = floor_div(Wn.hi, m);
      for (int64_t q = q0; q <= q1; ++q) {
        std::vector<int> rows;
        for (int64_t p = 0; p < m; ++p) {
          int64_t j = q * m + p;
          rows.push_back(Wn.contains(j) ? pos[static_cast<size_t>(j - Wn.lo)] : -1);
        }
        conj.push_back({e->kids[0].get(), Window{0, m - 1}, rows, true});
      }
      return;
    }
    conj.push_back({e, Wn, pos, false});
  }

  std::vector<Lattice> fused(const Expr* e, const Window& W, AffRows Q, AffRows K) {
    std::vector<int> pos;
    for (int64_t j = 0; j < W.width(); ++j) pos.push_back(static_cast<int>(j));
    std::vector<Conj> conj;
    std::set<int> must;
    std::set<std::pair<const Expr*, int64_t>> zchecks;
    flatten(e, W, pos, conj, must, zchecks);
    for (const auto& [node, m] : zchecks)
      if (!contains_zero(node, Window{0, m - 1})) return {};
    if (!constrain_zero(Q, K, std::vector<size_t>(must.begin(), must.end()))) return {};

    std::vector<Conj> order;
    for (const auto& c : conj)
      if (!c.block) order.push_back(c);
    std::vector<Conj> blocks;
    for (const auto& c : conj)
      if (c.block) blocks.push_back(c);
    auto span = [](const Conj& c) {
      int lo = -1, hi = -1;
      for (int r : c.rows)
        if (r >= 0) {
          lo = lo < 0 ? r : std::min(lo, r);
          hi = std::max(hi, r);
        }
      return std::make_pair(hi, lo);
    };
    std::stable_sort(blocks.begin(), blocks.end(), [&](const Conj& a, const Conj& b) { return span(a) < span(b); });
    order.insert(order.end(), blocks.begin(), blocks.end());

    size_t nk = K.rows();
    size_t nroot = static_cast<size_t>(W.width());
    std::vector<int> last_use(nroot, -1);
    for (size_t t = 0; t < order.size(); ++t)
      for (int r : order[t].rows)
        if (r >= 0) last_use[static_cast<size_t>(r)] = static_cast<int>(t);

    // Rows whose query is a private fresh parameter stay out of the states until
    // a conjunct first reads them; this keeps the state lattices narrow.
    std::vector<bool> lazy(nroot, false);
    {
      std::vector<int> col_uses(Q.params(), 0);
      for (size_t r = 0; r < nroot; ++r)
        for (size_t k = 0; k < Q.params(); ++k)
          if (Q.C(r, k) != 0) ++col_uses[k];
      for (size_t r = 0; r < K.rows(); ++r)
        for (size_t k = 0; k < K.params(); ++k)
          if (K.C(r, k) != 0) col_uses[k] += 2;
      for (size_t r = 0; r < nroot; ++r) {
        if (Q.b[r] != 0) continue;
        int nz = 0;
        bool unit = true;
        for (size_t k = 0; k < Q.params(); ++k)
          if (Q.C(r, k) != 0) {
            ++nz;
            unit = unit && Q.C(r, k) == 1 && col_uses[k] == 1;
          }
        lazy[r] = nz == 1 && unit;
      }
    }
    std::vector<int> frontier;
    for (size_t r = 0; r < nroot; ++r)
      if (last_use[r] >= 0 && !lazy[r]) frontier.push_back(static_cast<int>(r));
    std::vector<size_t> sel;
    for (int r : frontier) sel.push_back(static_cast<size_t>(r));
    AffRows init = stack(K, Q.select(sel));
    std::vector<Lattice> states{make_lattice(init.b, init.C)};
    std::vector<bool> active(nroot, false);
    for (int r : frontier) active[static_cast<size_t>(r)] = true;

    for (size_t t = 0; t < order.size() && !states.empty(); ++t) {
      const Conj& c = order[t];
      std::vector<int> fresh;
      for (int r : c.rows)
        if (r >= 0 && !active[static_cast<size_t>(r)] &&
            std::find(fresh.begin(), fresh.end(), r) == fresh.end())
          fresh.push_back(r);
      if (!fresh.empty()) {
        for (auto& st : states) {
          AffRows S = from_lattice(st);
          size_t np = S.params(), nr = S.rows();
          AffRows X{S.b, Mat(nr + fresh.size(), np + fresh.size())};
          X.b.resize(nr + fresh.size(), 0);
          for (size_t i = 0; i < nr; ++i)
            for (size_t k = 0; k < np; ++k) X.C(i, k) = S.C(i, k);
          for (size_t f = 0; f < fresh.size(); ++f) X.C(nr + f, np + f) = 1;
          st = make_lattice(X.b, X.C);
        }
        for (int r : fresh) {
          active[static_cast<size_t>(r)] = true;
          frontier.push_back(r);
        }
      }
      std::unordered_map<int, size_t> idx;
      for (size_t f = 0; f < frontier.size(); ++f) idx[frontier[f]] = nk + f;
      std::vector<int> next;
      for (int r : frontier)
        if (last_use[static_cast<size_t>(r)] > static_cast<int>(t)) next.push_back(r);
      std::vector<size_t> keep_rows;
      for (size_t i = 0; i < nk; ++i) keep_rows.push_back(i);
      for (int r : next) keep_rows.push_back(idx[r]);

      std::unordered_set<Lattice, LatticeHash> seen;
      std::vector<Lattice> out;
      auto push = [&](Lattice&& L) {
        if (seen.insert(L).second) {
          out.push_back(std::move(L));
          if (out.size() > opt_.pattern_cap)
            throw CapExceeded("pattern cap " + std::to_string(opt_.pattern_cap) + " exceeded while solving " +
                              node_desc(e, W));
        }
      };
      const std::vector<Lattice>* pats = c.block ? &plain(c.node, c.w) : nullptr;
      for (const auto& st : states) {
        AffRows S = from_lattice(st);
        size_t np = S.params();
        AffRows q{Vec(c.rows.size(), 0), Mat(c.rows.size(), np)};
        for (size_t p = 0; p < c.rows.size(); ++p) {
          if (c.rows[p] < 0) continue;
          size_t i = idx[c.rows[p]];
          q.b[p] = S.b[i];
          for (size_t k = 0; k < np; ++k) q.C(p, k) = S.C(i, k);
        }
        AffRows keep = S.select(keep_rows);
        if (!c.block) {
          for (auto& L : E(c.node, c.w, q, keep)) push(std::move(L));
          continue;
        }
        std::vector<bool> qconst(c.rows.size());
        bool all_const = true;
        for (size_t p = 0; p < c.rows.size(); ++p) all_const = (qconst[p] = q.C.row_zero(p)) && all_const;
        if (all_const) {
          // A concrete query leaves the state parameters untouched.
          for (const auto& P : *pats)
            if (P.contains(q.b)) {
              push(make_lattice(keep.b, keep.C));
              break;
            }
          continue;
        }
        for (const auto& P : *pats) {
          bool ok = true;
          for (size_t p = 0; p < c.rows.size() && ok; ++p)
            if (qconst[p] && P.b[p] != q.b[p] && P.H.row_zero(p)) ok = false;
          if (!ok) continue;
          size_t rp = P.rank();
          Mat A = q.C.hcat(Mat(c.rows.size(), rp));
          Vec rhs(c.rows.size());
          for (size_t p = 0; p < c.rows.size(); ++p) {
            for (size_t k = 0; k < rp; ++k) A(p, np + k) = -P.H(p, k);
            rhs[p] = checked_add(P.b[p], -q.b[p]);
          }
          auto s = solve_integer(A, rhs);
          if (!s) continue;
          push(image(add_zero_cols(keep, rp), *s));
        }
      }
      states = std::move(out);
      frontier = std::move(next);
    }
    return states;
  }
};

// ------------------------------------------------------------ public API

bool PatternSet::contains(const Seq& f) const {
  if (!f.is_zero() && (f.lo() < window.lo || f.hi() > window.hi)) return false;
  Vec v = f.window(window.lo, window.hi);
  for (const auto& L : patterns)
    if (L.contains(v)) return true;
  return false;
}

std::string PatternSet::str() const {
  std::string s;
  for (const auto& L : patterns) s += L.str() + "@" + window.str() + "\n";
  return s;
}

PatternSet eval_symbolic(const ExprPtr& e, const Window& W, const EvalOptions& opt) {
  SymEval ev(opt);
  PatternSet ps;
  ps.window = W;
  ps.patterns = ev.plain(e.get(), W);
  return ps;
}

std::vector<Lattice> eval_projection(const ExprPtr& e, const Window& W, const std::vector<int64_t>& positions,
                                     const EvalOptions& opt) {
  SymEval ev(opt);
  size_t n = static_cast<size_t>(W.width());
  AffRows Q{Vec(n, 0), Mat::identity(n)};
  AffRows K{Vec(positions.size(), 0), Mat(positions.size(), n)};
  for (size_t i = 0; i < positions.size(); ++i)
    if (W.contains(positions[i])) K.C(i, static_cast<size_t>(positions[i] - W.lo)) = 1;
  return ev.E(e.get(), W, Q, K);
}

namespace {

void expand_lattice(const Lattice& L, int64_t M, size_t budget, std::vector<Vec>& out) {
  size_t n = L.dim(), r = L.rank();
  Vec w(r, 0);
  auto value = [&](size_t row, size_t upto) {
    int64_t v = L.b[row];
    for (size_t j = 0; j < upto; ++j)
      if (L.H(row, j) != 0) v = checked_add(v, checked_mul(L.H(row, j), w[j]));
    return v;
  };
  auto rows_ok = [&](size_t from, size_t to, size_t upto) {
    for (size_t i = from; i < to; ++i) {
      int64_t v = value(i, upto);
      if (v < -M || v > M) return false;
    }
    return true;
  };
  size_t first = r ? L.piv[0] : n;
  if (!rows_ok(0, first, 0)) return;
  std::function<void(size_t)> rec = [&](size_t j) {
    if (j == r) {
      Vec x(n);
      for (size_t i = 0; i < n; ++i) x[i] = value(i, r);
      out.push_back(std::move(x));
      if (out.size() > budget) throw CapExceeded("expansion budget exceeded");
      return;
    }
    size_t pr = L.piv[j];
    int64_t base = value(pr, j);
    int64_t p = L.H(pr, j);
    int64_t lo = -floor_div(checked_add(M, base), p);  // ceil((-M - base)/p)
    int64_t hi = floor_div(checked_add(M, -base), p);
    size_t end = j + 1 < r ? L.piv[j + 1] : n;
    for (int64_t t = lo; t <= hi; ++t) {
      w[j] = t;
      if (rows_ok(pr + 1, end, j + 1)) rec(j + 1);
    }
    w[j] = 0;
  };
  rec(0);
}

}  // namespace

SeqSet expand(const PatternSet& ps, int64_t M, const EvalOptions& opt) {
  SeqSet out;
  for (const auto& L : ps.patterns) {
    std::vector<Vec> xs;
    expand_lattice(L, M, opt.enum_budget, xs);
    for (auto& x : xs) out.insert(Seq(ps.window.lo, x));
    if (out.size() > opt.enum_budget) throw CapExceeded("expansion budget exceeded");
  }
  return out;
}

// ------------------------------------------------------------ membership

namespace {

class Explainer {
 public:
  Explainer(SymEval& ev, const EvalOptions& opt, size_t limit) : ev_(ev), opt_(opt), limit_(limit) {}
  std::vector<std::string> lines;

  bool has(const Expr* e, const Window& W, const Vec& f) {
    AffRows Q{f, Mat(f.size(), 0)};
    AffRows K{Vec(), Mat(0, 0)};
    return !ev_.E(e, W, Q, K).empty();
  }

  // Concrete witness: positions flagged free are solved for one at a time, so
  // each query keeps a single row and the result stays small.
  Vec witness(const Expr* e, const Window& W, const Vec& fixed, const std::vector<bool>& free) {
    size_t n = fixed.size();
    Vec g = fixed;
    std::vector<bool> open = free;
    for (size_t t = 0; t < n; ++t) {
      if (!open[t]) continue;
      size_t nf = 0;
      for (bool b : open) nf += b;
      AffRows Q{Vec(n, 0), Mat(n, nf)};
      size_t c = 0, col_t = 0;
      for (size_t i = 0; i < n; ++i) {
        if (open[i]) {
          if (i == t) col_t = c;
          Q.C(i, c++) = 1;
        } else {
          Q.b[i] = g[i];
        }
      }
      AffRows K{Vec(1, 0), Mat(1, nf)};
      K.C(0, col_t) = 1;
      auto res = ev_.E(e, W, Q, K);
      if (res.empty()) throw std::logic_error("explain: no witness found");
      g[t] = res.front().b[0];
      open[t] = false;
    }
    return g;
  }

  void go(const Expr* e, const Window& W, const Vec& f, int depth) {
    if (lines.size() >= limit_) {
      if (lines.size() == limit_) lines.push_back("... (trace truncated)");
      return;
    }
    std::string ind(static_cast<size_t>(depth) * 2, ' ');
    std::string head = ind + op_keyword(e->op);
    if (e->op == Op::Omega || e->op == Op::SigmaPow || e->op == Op::ZetaAt || e->op == Op::PiAt ||
        e->op == Op::PiPrimeAt)
      head += " " + std::to_string(e->a);
    if (e->op == Op::TauSwap) head += " " + std::to_string(e->a) + " " + std::to_string(e->b);
    head += " " + W.str() + " " + Seq(W.lo, f).str();
    auto wins = e->kids.empty() ? std::vector<Window>{} : child_windows(*e, W, opt_.window);
    auto child_vals = [&](const Window& Wc, const std::function<std::optional<int64_t>(int64_t)>& val,
                          Vec& g, std::vector<bool>& free) {
      g.assign(static_cast<size_t>(Wc.width()), 0);
      free.assign(g.size(), false);
      for (int64_t p = Wc.lo; p <= Wc.hi; ++p) {
        auto v = val(p);
        if (v)
          g[static_cast<size_t>(p - Wc.lo)] = *v;
        else
          free[static_cast<size_t>(p - Wc.lo)] = true;
      }
    };
    auto at = [&](int64_t j) -> int64_t { return W.contains(j) ? f[static_cast<size_t>(j - W.lo)] : 0; };
    switch (e->op) {
      case Op::Z:
        lines.push_back(head);
        return;
      case Op::S:
        lines.push_back(head + "  n=" + std::to_string(W.contains(0) ? at(0) : at(1) - 1));
        return;
      case Op::Ups: case Op::UpsN: {
        for (size_t i = 0; i < e->kids.size(); ++i)
          if (has(e->kids[i].get(), W, f)) {
            lines.push_back(head + "  branch " + std::to_string(i));
            go(e->kids[i].get(), W, f, depth + 1);
            return;
          }
        lines.push_back(head + "  NOT A MEMBER");
        return;
      }
      case Op::Iota: case Op::IotaN:
        lines.push_back(head);
        for (const auto& k : e->kids) go(k.get(), W, f, depth + 1);
        return;
      case Op::Sigma: case Op::Rho: case Op::Tau: case Op::SigmaPow: case Op::TauSwap: case Op::Perm: {
        lines.push_back(head);
        Vec g;
        std::vector<bool> fr;
        child_vals(wins[0], [&](int64_t p) -> std::optional<int64_t> { return at(reloc_fwd(*e, p)); }, g, fr);
        go(e->kids[0].get(), wins[0], g, depth + 1);
        return;
      }
      case Op::Omega: {
        lines.push_back(head);
        int64_t m = e->a;
        for (int64_t q = floor_div(W.lo, m); q <= floor_div(W.hi, m); ++q) {
          Vec g(static_cast<size_t>(m));
          for (int64_t p = 0; p < m; ++p) g[static_cast<size_t>(p)] = at(q * m + p);
          go(e->kids[0].get(), Window{0, m - 1}, g, depth + 1);
        }
        return;
      }
      case Op::Sum: {
        lines.push_back(head);
        const auto& SA = *e->kids[0]->support;
        const auto& SB = *e->kids[1]->support;
        for (int side = 0; side < 2; ++side) {
          const auto& supp = side == 0 ? SA : SB;
          Vec g;
          std::vector<bool> fr;
          child_vals(wins[side], [&](int64_t p) -> std::optional<int64_t> { return supp.count(p) ? at(p) : 0; },
                     g, fr);
          go(e->kids[side].get(), wins[side], g, depth + 1);
        }
        return;
      }
      default:
        break;
    }
    // liberations, theta and extract: solve for a concrete witness
    std::function<std::optional<int64_t>(int64_t)> val;
    switch (e->op) {
      case Op::Zeta: val = [&](int64_t p) -> std::optional<int64_t> { if (p == 0) return std::nullopt; return at(p); }; break;
      case Op::ZetaAt: val = [&](int64_t p) -> std::optional<int64_t> { if (p == e->a) return std::nullopt; return at(p); }; break;
      case Op::ZetaSet:
        val = [&](int64_t p) -> std::optional<int64_t> {
          if (std::binary_search(e->idx.begin(), e->idx.end(), p)) return std::nullopt;
          return at(p);
        };
        break;
      case Op::Pi: val = [&](int64_t p) -> std::optional<int64_t> { if (p > 0) return std::nullopt; return at(p); }; break;
      case Op::PiAt: val = [&](int64_t p) -> std::optional<int64_t> { if (p > e->a) return std::nullopt; return at(p); }; break;
      case Op::PiPrime: val = [&](int64_t p) -> std::optional<int64_t> { if (p < 0) return std::nullopt; return at(p); }; break;
      case Op::PiPrimeAt: val = [&](int64_t p) -> std::optional<int64_t> { if (p < e->a) return std::nullopt; return at(p); }; break;
      case Op::Theta:
        val = [&](int64_t p) -> std::optional<int64_t> { if (p % 2 != 0) return std::nullopt; return at(p / 2); };
        break;
      case Op::Eps:
        val = [&](int64_t p) -> std::optional<int64_t> {
          auto it = std::lower_bound(e->idx.begin(), e->idx.end(), p);
          if (it != e->idx.end() && *it == p) return at(it - e->idx.begin());
          return std::nullopt;
        };
        break;
      default:
        throw std::logic_error("explain: unexpected node");
    }
    Vec g;
    std::vector<bool> fr;
    child_vals(wins[0], val, g, fr);
    g = witness(e->kids[0].get(), wins[0], g, fr);
    lines.push_back(head + "  witness " + Seq(wins[0].lo, g).str());
    go(e->kids[0].get(), wins[0], g, depth + 1);
  }

 private:
  SymEval& ev_;
  const EvalOptions& opt_;
  size_t limit_;
};

}  // namespace

MemberResult member(const ExprPtr& e, const Seq& f, const Window& W, const EvalOptions& opt, size_t trace_limit) {
  if (!f.is_zero() && (f.lo() < W.lo || f.hi() > W.hi))
    throw WindowTooSmall("support of " + f.str() + " is not inside window " + W.str());
  SymEval ev(opt);
  Vec v = f.window(W.lo, W.hi);
  Explainer ex(ev, opt, trace_limit);
  MemberResult r;
  r.member = ex.has(e.get(), W, v);
  if (r.member && trace_limit > 0) ex.go(e.get(), W, v, 0);
  r.trace = std::move(ex.lines);
  return r;
}

StabilizeReport stabilize(const ExprPtr& e, const std::vector<int64_t>& probe,
                          const std::vector<std::pair<Window, int64_t>>& schedule, const EvalOptions& opt) {
  StabilizeReport rep;
  rep.probe = probe;
  for (size_t s = 1; s < schedule.size(); ++s) {
    const auto& [a, ma] = schedule[s - 1];
    const auto& [b, mb] = schedule[s];
    if (!(b.lo <= a.lo && a.hi <= b.hi && mb >= ma) || (a == b && ma == mb))
      throw std::invalid_argument("stabilize schedule must be strictly growing");
  }
  for (const auto& [W, M] : schedule) {
    StabilizeStep st{W, M, {}};
    auto lat = eval_projection(e, W, probe, opt);
    for (const auto& L : lat) {
      std::vector<Vec> xs;
      expand_lattice(L, M, opt.enum_budget, xs);
      for (auto& x : xs) {
        for (size_t i = 0; i < probe.size(); ++i)
          if (!W.contains(probe[i])) x[i] = 0;
        st.values.insert(x);
      }
    }
    rep.steps.push_back(std::move(st));
  }
  size_t n = rep.steps.size();
  rep.stable = n >= 2 ? rep.steps[n - 1].values == rep.steps[n - 2].values : n == 1;
  return rep;
}

std::string StabilizeReport::str() const {
  std::string s = "probe positions:";
  for (auto p : probe) s += " " + std::to_string(p);
  s += "\n";
  for (const auto& st : steps) {
    s += "window " + st.window.str() + " mag " + std::to_string(st.mag) + ": " + std::to_string(st.values.size()) +
         " value(s) {";
    bool first = true;
    for (const auto& v : st.values) {
      s += first ? "" : " ";
      first = false;
      s += "(";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      s += ")";
    }
    s += "}\n";
  }
  s += std::string("status: ") + (stable ? "stable" : "unstable") + "\n";
  return s;
}

}  // namespace higman
