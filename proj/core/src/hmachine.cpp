#include "higman/hmachine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace higman {

namespace hm {

namespace {

using namespace ex;

// Builders are deterministic, so equal requests share one node. Sharing keeps
// the DAG small and lets the evaluators' memo tables hit.
ExprPtr cached(const std::string& key, const std::function<ExprPtr()>& make) {
  static std::mutex mu;
  static std::map<std::string, ExprPtr> memo;
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  ExprPtr e = make();
  std::lock_guard<std::mutex> g(mu);
  return memo.emplace(key, e).first->second;
}

ExprPtr shift(int64_t i, const ExprPtr& e) { return i == 0 ? e : sigma_pow(i, e); }

std::vector<int64_t> range(int64_t lo, int64_t hi) {
  std::vector<int64_t> v;
  for (int64_t i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

ExprPtr free_at(std::vector<int64_t> idx) { return zeta_set(std::move(idx), Z()); }

// Duplicates coordinate 0 into coordinate 1 for sets vanishing after 0.
ExprPtr dup0(const ExprPtr& b) {
  ExprPtr f1 = zeta_set({1, 2}, b);
  ExprPtr f2 = pi_prime(zeta_at(2, S()));
  ExprPtr f3 = pi_prime_at(1, sigma(tau(S())));
  ExprPtr f4 = iota_n({f1, f2, f3});
  ExprPtr f5 = zeta_at(2, tau_swap(1, 2, f4));
  ExprPtr f6 = pi_prime_at(2, Z());
  return iota(f5, f6);
}

int64_t max_support(const ExprPtr& b, const char* what) {
  if (!b->support) throw std::invalid_argument(std::string(what) + " needs an operand with finite static support");
  return b->support->empty() ? -1 : *b->support->rbegin();
}

int64_t min_support(const ExprPtr& b, const char* what) {
  if (!b->support) throw std::invalid_argument(std::string(what) + " needs an operand with finite static support");
  return b->support->empty() ? 0 : *b->support->begin();
}

// Blocks of two chained 8-tuples: (0,0,m,n, 0,0,m-d,n-d) from sigma^2 X + sigma^4 X
// with X = tau S (d = 1) or S (d = -1).
ExprPtr chain_part(const ExprPtr& pair_set) {
  Permutation a = Permutation::from_map({{3, 6}, {4, 3}, {5, 7}, {6, 4}, {7, 5}});
  return perm(a, sum(shift(2, pair_set), shift(4, pair_set)));
}

}  // namespace

ExprPtr singleton(int64_t n) {
  return cached("N" + std::to_string(n), [n]() -> ExprPtr {
    if (n == 0) return Z();
    if (n == 1) return iota(tau(S()), zeta(Z()));
    if (n == -1) return iota(S(), zeta(Z()));
    // (t+1, t) with t = n-1, or (t, t+1) with t+1 = n+1
    if (n > 0) return eps({0}, iota(tau(S()), zeta(sigma(singleton(n - 1)))));
    return eps({0}, iota(S(), zeta(sigma(singleton(n + 1)))));
  });
}

ExprPtr constants(const std::vector<int64_t>& v) {
  std::vector<std::pair<ExprPtr, int64_t>> parts;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) parts.push_back({singleton(v[i]), static_cast<int64_t>(i)});
  if (parts.empty()) return Z();
  return shifted_sum(parts);
}

ExprPtr sign_plus() {
  return cached("B+", [] {
    ExprPtr a1 = omega(2, ups(zeta_at(1, Z()), tau(S())));
    ExprPtr a2 = iota(a1, sigma_pow(-1, a1));
    ExprPtr a3 = pi_at(1, pi_prime(tau(S())));
    return eps({0}, iota(a2, a3));
  });
}

ExprPtr sign_minus() {
  return cached("B-", [] {
    ExprPtr a1 = omega(2, ups(zeta_at(1, Z()), S()));
    ExprPtr a2 = iota(a1, sigma_pow(-1, a1));
    ExprPtr a3 = pi_at(1, pi_prime(S()));
    return eps({0}, iota(a2, a3));
  });
}

ExprPtr above(int64_t k) {
  return cached("B>" + std::to_string(k), [k]() -> ExprPtr {
    if (k == 0) return sign_plus();
    if (k > 0) return eps({0}, iota(tau(S()), zeta(sigma(above(k - 1)))));
    return eps({0}, iota(S(), zeta(sigma(above(k + 1)))));
  });
}

ExprPtr below(int64_t k) {
  return cached("B<" + std::to_string(k), [k]() -> ExprPtr {
    if (k == 0) return sign_minus();
    if (k > 0) return eps({0}, iota(tau(S()), zeta(sigma(below(k - 1)))));
    return eps({0}, iota(S(), zeta(sigma(below(k + 1)))));
  });
}

ExprPtr other_than(int64_t k) {
  return cached("B!=" + std::to_string(k), [k] { return ups(above(k), below(k)); });
}

ExprPtr shifted_sum(const std::vector<std::pair<ExprPtr, int64_t>>& parts) {
  if (parts.empty()) return Z();
  ExprPtr acc = shift(parts[0].second, parts[0].first);
  for (size_t i = 1; i < parts.size(); ++i) acc = sum(acc, shift(parts[i].second, parts[i].first));
  return acc;
}

ExprPtr dup_last(const ExprPtr& b, int64_t k) {
  int64_t hi = max_support(b, "duplicate");
  if (hi > k)
    throw std::invalid_argument("duplicate at " + std::to_string(k) + " needs an operand vanishing after it (support " +
                                support_str(b->support) + ")");
  return shift(k, dup0(shift(-k, b)));
}

ExprPtr dup_first(const ExprPtr& b, int64_t j) {
  int64_t lo = min_support(b, "duplicate");
  if (lo < j)
    throw std::invalid_argument("leading duplicate at " + std::to_string(j) +
                                " needs an operand vanishing before it (support " + support_str(b->support) + ")");
  return sigma(rho(dup_last(rho(b), -j)));
}

ExprPtr equal_coords(int64_t a, int64_t b) {
  if (a >= b) throw std::invalid_argument("equal_coords needs a < b");
  return cached("EQ" + std::to_string(a) + "," + std::to_string(b), [a, b] {
    ExprPtr pair = shift(a, cached("PP", [] { return dup0(zeta(Z())); }));
    if (b != a + 1) pair = tau_swap(a + 1, b, pair);
    if (b > a + 1) pair = zeta_set(range(a + 1, b - 1), pair);
    return pi_prime_at(a, pi_at(b, pair));
  });
}

ExprPtr opposite_pairs_variant(int64_t li) {
  return cached("OPP" + std::to_string(li), [li] {
    ExprPtr l1 = free_at({2, 3});
    ExprPtr l2 = sum(tau_swap(1, 2, tau(S())), tau_swap(1, 2, shift(2, S())));
    ExprPtr l3 = omega(4, ups(l1, l2));
    ExprPtr m = iota(l3, shift(-2, l3));
    ExprPtr c3 = pi_at(li, pi_prime(m));
    ExprPtr c4 = sum(sign_plus(), sigma(sign_minus()));
    return iota(c3, c4);
  });
}

int64_t opposite_pairs_liberation_index() { return 1; }

ExprPtr opposite_pairs() { return opposite_pairs_variant(opposite_pairs_liberation_index()); }

ExprPtr opposite_pairs_all() {
  return cached("OPPZ", [] { return ups_n({opposite_pairs(), tau(opposite_pairs()), Z()}); });
}

ExprPtr pair_extract(const ExprPtr& b, int64_t i, int64_t j) {
  if (i == j) throw std::invalid_argument("pair_extract needs distinct positions");
  if (i < j) return eps({i, j}, b);
  return tau(eps({j, i}, b));
}

const std::vector<int64_t>& triple_extract_positions() {
  static const std::vector<int64_t> v{0, 1, 3};
  return v;
}

ExprPtr triples_variant(const ExprPtr& p, const std::vector<int64_t>& extract) {
  ExprPtr t1 = iota(free_at({0, 1, 2}), equal_coords(1, 2));
  ExprPtr t2 = iota(free_at({4, 5, 6, 7}), equal_coords(4, 6));
  ExprPtr d = iota_n({free_at({0, 1, 4, 5}), equal_coords(0, 4), equal_coords(1, 5)});
  ExprPtr t3 = sum(d, chain_part(tau(S())));
  ExprPtr t4 = sum(d, chain_part(S()));
  ExprPtr p1 = ups_n({t1, t2, t3, t4});
  ExprPtr w = omega(8, p1);
  ExprPtr p2 = iota(w, shift(-4, w));
  ExprPtr p3 = iota(p2, pi_at(1, p));
  return eps(extract, p3);
}

ExprPtr negate_coord(const ExprPtr& b, int64_t j) {
  int64_t lo = min_support(b, "negate_coord");
  int64_t L = std::max(max_support(b, "negate_coord"), j) + 1;
  if (lo < 0 || j < 0) throw std::invalid_argument("negate_coord needs nonnegative positions");
  ExprPtr y = shift(j, opposite_pairs_all());
  if (L != j + 1) y = tau_swap(j + 1, L, y);
  if (L > j + 1) y = zeta_set(range(j + 1, L - 1), y);
  y = pi_prime_at(j, pi_at(L, y));
  ExprPtr x = iota(zeta_at(L, b), y);
  return eps(range(0, L - 1), tau_swap(j, L, x));
}

ExprPtr triples(const ExprPtr& p, ArithMode mode) {
  if (mode == ArithMode::Diff) return triples_variant(p, triple_extract_positions());
  // (p, q) -> (p, q, -q) -> (p, -q) -> (p, -q, p+q) -> (p, q, p+q)
  ExprPtr p4 = negate_coord(dup_last(p, 1), 2);
  ExprPtr p5 = eps({0, 2}, p4);
  return negate_coord(triples(p5, ArithMode::Diff), 1);
}

ExprPtr replace_coord(const ExprPtr& b, int64_t i, int64_t j, int64_t k, ArithMode mode, const ExprPtr& pairs) {
  if (i == j || i == k || j == k) throw std::invalid_argument("replace_coord needs three distinct positions");
  std::map<int64_t, int64_t> mp{{i, 0}, {j, 1}, {k, 2}};
  std::vector<int64_t> displaced, targets;
  for (int64_t t = 0; t < 3; ++t)
    if (t != i && t != j && t != k) displaced.push_back(t);
  for (int64_t t : {i, j, k})
    if (t < 0 || t > 2) targets.push_back(t);
  std::sort(targets.begin(), targets.end());
  for (size_t r = 0; r < displaced.size(); ++r) mp[displaced[r]] = targets[r];
  Permutation alpha = Permutation::from_map(mp);
  ExprPtr pr = pairs ? pairs : pair_extract(b, i, j);
  ExprPtr r1 = zeta_at(2, alpha.is_identity() ? b : perm(alpha, b));
  ExprPtr r2 = pi_prime(pi_at(2, triples(pr, mode)));
  ExprPtr r3 = iota(r1, r2);
  return alpha.is_identity() ? r3 : perm(alpha.inverse(), r3);
}

ExprPtr scaled_pairs(int64_t s, const ExprPtr& q) {
  if (s < 0) throw std::invalid_argument("scaled_pairs needs s >= 0");
  if (s == 0) return q;
  ExprPtr t = dup_last(q, 0);
  for (int64_t r = 2; r <= s; ++r) t = eps({1, 2}, triples(tau(t), ArithMode::Sum));
  return t;
}

}  // namespace hm

// ------------------------------------------------------------ operands and specs

SeqSet truncate(const SeqSet& s, const Window& W, int64_t M) {
  SeqSet out;
  for (const auto& f : s) {
    if (f.max_abs() > M) continue;
    if (!f.is_zero() && (f.lo() < W.lo || f.hi() > W.hi)) continue;
    out.insert(f);
  }
  return out;
}

Operand operand_constants(const std::vector<std::vector<int64_t>>& seqs) {
  Operand o;
  std::vector<ExprPtr> alts;
  for (const auto& v : seqs) alts.push_back(hm::constants(v));
  if (alts.empty()) throw std::invalid_argument("operand_constants needs at least one sequence");
  o.expr = alts.size() == 1 ? alts[0] : ex::ups_n(alts);
  o.members = [seqs](int64_t) {
    SeqSet s;
    for (const auto& v : seqs) s.insert(Seq(0, v));
    return s;
  };
  o.desc = "explicit set of " + std::to_string(seqs.size()) + " sequence(s)";
  return o;
}

Operand operand_positive_pairs() {
  Operand o;
  o.expr = ex::sum(hm::sign_plus(), ex::sigma(hm::sign_plus()));
  o.members = [](int64_t M) {
    SeqSet s;
    for (int64_t p = 1; p <= M; ++p)
      for (int64_t q = 1; q <= M; ++q) s.insert(Seq(0, {p, q}));
    return s;
  };
  o.desc = "all pairs (p, q) with p, q >= 1";
  return o;
}

Operand operand_singletons_range(int64_t lo, int64_t hi) {
  std::vector<std::vector<int64_t>> v;
  for (int64_t n = lo; n <= hi; ++n) v.push_back({n});
  Operand o = operand_constants(v);
  o.desc = "singletons (n) with " + std::to_string(lo) + " <= n <= " + std::to_string(hi);
  return o;
}

std::string BuilderSpec::describe() const {
  auto list = [](const std::vector<int64_t>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::string md = mode == ArithMode::Diff ? "diff" : "sum";
  switch (kind) {
    case BuilderKind::Singletons: return "singletons(" + list(values) + ")";
    case BuilderKind::Sign: {
      std::string s = sign == SignKind::Plus ? "+" : sign == SignKind::Minus ? "-" : "+-";
      return "sign(" + s + (threshold ? ", k=" + std::to_string(*threshold) : "") + ")";
    }
    case BuilderKind::Sum: {
      std::string s = "sum(";
      for (size_t i = 0; i < parts.size(); ++i)
        s += (i ? "; " : "") + parts[i].first.desc + " shifted by " + std::to_string(parts[i].second);
      return s + ")";
    }
    case BuilderKind::Duplicate: return "duplicate(" + operand.desc + ", k=" + std::to_string(k) + ")";
    case BuilderKind::OppositePairs: return all_integers ? "opposite_pairs(all n)" : "opposite_pairs(n >= 1)";
    case BuilderKind::ArithTriples: return "arith_triples(" + operand.desc + ", " + md + ")";
    case BuilderKind::ReplaceCoord:
      return "replace_coord(" + operand.desc + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) +
             ", k=" + std::to_string(k) + ", " + md + ")";
    case BuilderKind::ScaledPairs: return "scaled_pairs(s=" + std::to_string(k) + ", " + operand.desc + ")";
  }
  return "?";
}

ExprPtr build(const BuilderSpec& spec) {
  switch (spec.kind) {
    case BuilderKind::Singletons: return hm::constants(spec.values);
    case BuilderKind::Sign: {
      int64_t k = spec.threshold.value_or(0);
      if (spec.sign == SignKind::Plus) return hm::above(k);
      if (spec.sign == SignKind::Minus) return hm::below(k);
      return hm::other_than(k);
    }
    case BuilderKind::Sum: {
      std::vector<std::pair<ExprPtr, int64_t>> p;
      for (const auto& [op, s] : spec.parts) p.push_back({op.expr, s});
      return hm::shifted_sum(p);
    }
    case BuilderKind::Duplicate: return hm::dup_last(spec.operand.expr, spec.k);
    case BuilderKind::OppositePairs: return spec.all_integers ? hm::opposite_pairs_all() : hm::opposite_pairs();
    case BuilderKind::ArithTriples: return hm::triples(spec.operand.expr, spec.mode);
    case BuilderKind::ReplaceCoord:
      return hm::replace_coord(spec.operand.expr, spec.i, spec.j, spec.k, spec.mode);
    case BuilderKind::ScaledPairs: return hm::scaled_pairs(spec.k, spec.operand.expr);
  }
  throw std::logic_error("unknown builder kind");
}

SeqSet oracle_set(const BuilderSpec& spec, const Window& W, int64_t M) {
  SeqSet out;
  auto add = [&](const Seq& f) { out.insert(f); };
  switch (spec.kind) {
    case BuilderKind::Singletons: add(Seq(0, spec.values)); break;
    case BuilderKind::Sign: {
      int64_t k = spec.threshold.value_or(0);
      for (int64_t n = -M; n <= M; ++n) {
        bool in = spec.sign == SignKind::Plus ? n > k : spec.sign == SignKind::Minus ? n < k : n != k;
        if (in) add(Seq(0, {n}));
      }
      break;
    }
    case BuilderKind::Sum: {
      std::vector<Seq> acc{Seq()};
      for (const auto& [op, s] : spec.parts) {
        std::vector<Seq> next;
        for (const auto& g : op.members(M))
          for (const auto& f : acc) {
            std::map<int64_t, int64_t> vals;
            for (int64_t i = f.lo(); !f.is_zero() && i <= f.hi(); ++i) vals[i] += f.at(i);
            for (int64_t i = g.lo(); !g.is_zero() && i <= g.hi(); ++i) vals[i + s] += g.at(i);
            if (vals.empty()) {
              next.push_back(Seq());
              continue;
            }
            int64_t lo = vals.begin()->first, hi = vals.rbegin()->first;
            std::vector<int64_t> c;
            for (int64_t i = lo; i <= hi; ++i) c.push_back(vals.count(i) ? vals[i] : 0);
            next.push_back(Seq(lo, c));
          }
        acc = std::move(next);
      }
      for (auto& f : acc) add(f);
      break;
    }
    case BuilderKind::Duplicate:
      for (const auto& g : spec.operand.members(M)) {
        std::map<int64_t, int64_t> vals;
        for (int64_t i = g.lo(); !g.is_zero() && i <= g.hi(); ++i) vals[i] = g.at(i);
        vals[spec.k + 1] = g.at(spec.k);
        int64_t lo = std::min(vals.begin()->first, spec.k), hi = vals.rbegin()->first;
        std::vector<int64_t> c;
        for (int64_t i = lo; i <= hi; ++i) c.push_back(vals.count(i) ? vals[i] : 0);
        add(Seq(lo, c));
      }
      break;
    case BuilderKind::OppositePairs:
      for (int64_t n = spec.all_integers ? -M : 1; n <= M; ++n) add(Seq(0, {n, -n}));
      break;
    case BuilderKind::ArithTriples:
      for (const auto& g : spec.operand.members(M)) {
        int64_t p = g.at(0), q = g.at(1);
        add(Seq(0, {p, q, spec.mode == ArithMode::Diff ? p - q : p + q}));
      }
      break;
    case BuilderKind::ReplaceCoord:
      for (const auto& g : spec.operand.members(M)) {
        int64_t lo = std::min({g.is_zero() ? 0 : g.lo(), spec.k});
        int64_t hi = std::max({g.is_zero() ? 0 : g.hi(), spec.k});
        std::vector<int64_t> c;
        for (int64_t i = lo; i <= hi; ++i) c.push_back(g.at(i));
        int64_t v = spec.mode == ArithMode::Diff ? g.at(spec.i) - g.at(spec.j) : g.at(spec.i) + g.at(spec.j);
        c[static_cast<size_t>(spec.k - lo)] = v;
        add(Seq(lo, c));
      }
      break;
    case BuilderKind::ScaledPairs:
      for (const auto& g : spec.operand.members(M)) add(Seq(0, {g.at(0), spec.k * g.at(0)}));
      break;
  }
  return truncate(out, W, M);
}

}  // namespace higman

// ------------------------------------------------------------ text specs

namespace higman {

namespace {

// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
  out.push_back(cur);
  return out;
}

int64_t to_int(const std::string& s) {
  size_t used = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

std::pair<int64_t, int64_t> parse_range(const std::string& s) {
  auto d = s.find("..");
  if (d == std::string::npos) throw std::invalid_argument("expected lo..hi, got '" + s + "'");
  int64_t lo = to_int(s.substr(0, d)), hi = to_int(s.substr(d + 2));
  if (lo > hi) throw std::invalid_argument("empty range '" + s + "'");
  return {lo, hi};
}

std::vector<int64_t> parse_list(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw std::invalid_argument("expected (v0,v1,...), got '" + s + "'");
  std::vector<int64_t> v;
  for (const auto& x : split_top(s.substr(1, s.size() - 2), ',')) v.push_back(to_int(x));
  return v;
}

// "name(body)" -> body
std::optional<std::string> call_arg(const std::string& s, const std::string& name) {
  if (s.size() < name.size() + 2 || s.compare(0, name.size() + 1, name + "(") != 0 || s.back() != ')')
    return std::nullopt;
  return s.substr(name.size() + 1, s.size() - name.size() - 2);
}

Operand parse_operand(const std::string& s) {
  if (s == "pospairs") return operand_positive_pairs();
  if (auto a = call_arg(s, "range")) {
    auto [lo, hi] = parse_range(*a);
    return operand_singletons_range(lo, hi);
  }
  if (auto a = call_arg(s, "pairs")) {
    auto [lo, hi] = parse_range(*a);
    std::vector<std::vector<int64_t>> v;
    for (int64_t p = lo; p <= hi; ++p)
      for (int64_t q = lo; q <= hi; ++q) v.push_back({p, q});
    Operand o = operand_constants(v);
    o.desc = "pairs (p, q) with " + std::to_string(lo) + " <= p, q <= " + std::to_string(hi);
    return o;
  }
  if (auto a = call_arg(s, "set")) {
    std::vector<std::vector<int64_t>> v;
    for (const auto& x : split_top(*a, ';')) v.push_back(parse_list(x));
    return operand_constants(v);
  }
  throw std::invalid_argument("unknown operand '" + s + "'");
}

}  // namespace

BuilderSpec parse_builder_spec(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  auto colon = t.find(':');
  std::string kind = t.substr(0, colon);
  std::map<std::string, std::string> kv;
  std::vector<std::string> bare;
  if (colon != std::string::npos)
    for (const auto& a : split_top(t.substr(colon + 1), ',')) {
      if (a.empty()) continue;
      auto eq = a.find('=');
      bool nested = a.find('(') != std::string::npos && a.find('(') < eq;
      if (eq != std::string::npos && !nested)
        kv[a.substr(0, eq)] = a.substr(eq + 1);
      else
        bare.push_back(a);
    }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument("builder '" + kind + "' needs " + k + "=...");
    return it->second;
  };
  auto mode_of = [&]() {
    for (const auto& b : bare) {
      if (b == "diff") return ArithMode::Diff;
      if (b == "sum") return ArithMode::Sum;
    }
    throw std::invalid_argument("builder '" + kind + "' needs diff or sum");
  };
  BuilderSpec s;
  if (kind == "singletons") {
    s.kind = BuilderKind::Singletons;
    if (bare.size() != 1) throw std::invalid_argument("singletons needs one value list, e.g. singletons:(1,-2)");
    s.values = parse_list(bare[0]);
  } else if (kind == "sign") {
    s.kind = BuilderKind::Sign;
    if (bare.size() != 1 || (bare[0] != "+" && bare[0] != "-" && bare[0] != "+-"))
      throw std::invalid_argument("sign needs one of +, -, +-");
    s.sign = bare[0] == "+" ? SignKind::Plus : bare[0] == "-" ? SignKind::Minus : SignKind::PlusMinus;
    if (kv.count("k")) s.threshold = to_int(kv["k"]);
  } else if (kind == "sum") {
    s.kind = BuilderKind::Sum;
    for (const auto& b : bare) {
      auto at = b.rfind('@');
      if (at == std::string::npos) throw std::invalid_argument("sum part needs operand@shift, got '" + b + "'");
      s.parts.push_back({parse_operand(b.substr(0, at)), to_int(b.substr(at + 1))});
    }
    if (s.parts.empty()) throw std::invalid_argument("sum needs at least one part");
  } else if (kind == "duplicate") {
    s.kind = BuilderKind::Duplicate;
    s.k = to_int(need("k"));
    s.operand = parse_operand(need("operand"));
  } else if (kind == "opposite") {
    s.kind = BuilderKind::OppositePairs;
    s.all_integers = std::find(bare.begin(), bare.end(), "all") != bare.end();
  } else if (kind == "triples") {
    s.kind = BuilderKind::ArithTriples;
    s.mode = mode_of();
    s.operand = parse_operand(need("operand"));
  } else if (kind == "replace") {
    s.kind = BuilderKind::ReplaceCoord;
    s.i = to_int(need("i"));
    s.j = to_int(need("j"));
    s.k = to_int(need("k"));
    s.mode = mode_of();
    s.operand = parse_operand(need("operand"));
  } else if (kind == "scaled") {
    s.kind = BuilderKind::ScaledPairs;
    s.k = to_int(need("s"));
    s.operand = parse_operand(need("operand"));
  } else {
    throw std::invalid_argument("unknown builder '" + kind +
                                "' (singletons, sign, sum, duplicate, opposite, triples, replace, scaled)");
  }
  return s;
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  os << "builder: " << spec << "\n"
     << "window: " << window.str() << "\n"
     << "mag: " << mag << "\n"
     << "mode: " << (symbolic ? "sym" : "enum") << "\n"
     << "oracle members: " << expected << "\n"
     << "expression members: " << produced << "\n";
  for (const auto& f : missing) os << "counterexample missing: " << f.str() << "\n";
  for (const auto& f : extra) os << "counterexample extra: " << f.str() << "\n";
  os << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerifyReport verify_builder(const BuilderSpec& spec, const Window& W, int64_t M, bool symbolic,
                            const EvalOptions& opt, size_t max_counterexamples) {
  VerifyReport r;
  r.spec = spec.describe();
  r.window = W;
  r.mag = M;
  r.symbolic = symbolic;
  ExprPtr e = build(spec);
  SeqSet want = truncate(oracle_set(spec, W, M), W, M);
  SeqSet got = symbolic ? expand(eval_symbolic(e, W, opt), M, opt) : eval_enum(e, W, M, opt);
  r.expected = want.size();
  r.produced = got.size();
  for (const auto& f : want)
    if (!got.count(f) && r.missing.size() < max_counterexamples) r.missing.push_back(f);
  for (const auto& f : got)
    if (!want.count(f) && r.extra.size() < max_counterexamples) r.extra.push_back(f);
  return r;
}

}  // namespace higman
