#include "higman/synth.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace higman {

namespace {

using namespace ex;

std::string join_ints(const std::vector<int64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Single-parameter form t + c with coefficient +1 or -1.
struct ParamForm {
  std::string name;
  int64_t coef = 0;
  int64_t c = 0;
};

std::optional<ParamForm> single_param(const Affine& a) {
  if (a.terms.size() != 1) return std::nullopt;
  auto [name, coef] = *a.terms.begin();
  if (coef != 1 && coef != -1) return std::nullopt;
  return ParamForm{name, coef, a.c};
}

struct Derivation {
  int64_t target;  // layout position
  int64_t i, j;    // layout positions of the operands
  ArithMode mode;
};

struct ParamBlock {
  std::string name;
  Affine base;     // X = t + c0
  int64_t a = 0;   // copies of X
  int64_t b = 0;   // copies of -X
  std::optional<int64_t> threshold;  // X > threshold; none means all integers
};

}  // namespace

std::string SynthResult::log() const {
  std::ostringstream os;
  for (size_t i = 0; i < steps.size(); ++i) {
    os << "step " << (i + 1) << ": " << steps[i].lemma;
    if (!steps[i].coords.empty()) os << " [coords " << join_ints(steps[i].coords) << "]";
    os << "\n    " << steps[i].detail << "\n";
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

Window SynthResult::window_for(int64_t max_abs) const {
  int64_t v = std::max<int64_t>(max_abs, 1) + 1;
  int64_t n = static_cast<int64_t>(length);
  return Window{0, std::max(n - 1, 8 * v) + 2 * v};
}

SynthResult synth_from_grouped_template(const SeqTemplate& grouped, const std::optional<Permutation>& alpha) {
  const auto& coords = grouped.coords;
  const int64_t n = static_cast<int64_t>(coords.size());
  std::map<std::string, std::optional<int64_t>> lower;
  for (const auto& p : grouped.params) {
    if (p.values) throw std::invalid_argument("parameter " + p.name + " ranges over a finite set; fix it first");
    lower[p.name] = p.lower;
  }
  for (int64_t i = 0; i < n; ++i)
    for (const auto& [name, coef] : coords[i].terms)
      if (!lower.count(name))
        throw std::invalid_argument("unsupported coordinate form at index " + std::to_string(i) + ": " +
                                    coords[i].str() + " (undeclared parameter " + name + ")");

  // Classify: nonzero constants, one base form per parameter, everything else derived.
  std::vector<std::pair<int64_t, int64_t>> const_runs;  // value, multiplicity
  std::vector<ParamBlock> blocks;
  std::vector<int64_t> zero_coords;
  for (int64_t i = 0; i < n; ++i) {
    const Affine& a = coords[i];
    if (a.is_constant()) {
      if (a.c == 0) {
        zero_coords.push_back(i);
        continue;
      }
      auto it = std::find_if(const_runs.begin(), const_runs.end(), [&](auto& r) { return r.first == a.c; });
      if (it == const_runs.end()) const_runs.push_back({a.c, 1});
      else ++it->second;
    }
  }
  std::vector<std::string> names;
  for (const auto& a : coords)
    for (const auto& [name, coef] : a.terms)
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  for (const auto& t : names) {
    std::map<Affine, int64_t> plus, minus;
    std::vector<Affine> order;
    for (const auto& a : coords) {
      auto f = single_param(a);
      if (!f || f->name != t) continue;
      (f->coef > 0 ? plus : minus)[a]++;
      if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
    }
    if (plus.empty() && minus.empty())
      throw std::invalid_argument("unsupported coordinate form: parameter " + t +
                                  " never occurs alone, so no base coordinate carries it");
    ParamBlock blk;
    blk.name = t;
    const auto& pool = plus.empty() ? minus : plus;
    int64_t best = -1;
    for (const auto& a : order) {
      auto it = pool.find(a);
      if (it != pool.end() && it->second > best) {
        best = it->second;
        blk.base = plus.empty() ? -a : a;
      }
    }
    blk.a = plus.count(blk.base) ? plus[blk.base] : 0;
    blk.b = minus.count(-blk.base) ? minus[-blk.base] : 0;
    if (lower[t]) blk.threshold = *lower[t] + blk.base.c - 1;
    blocks.push_back(blk);
  }

  // Layout: constant runs, parameter blocks, derived coordinates, zeros, scratch.
  std::vector<Affine> layout;
  std::vector<int64_t> owner;  // template index, -1 for scratch
  std::vector<bool> used(n, false);
  auto claim = [&](const Affine& form) {
    for (int64_t i = 0; i < n; ++i)
      if (!used[i] && coords[i] == form) {
        used[i] = true;
        layout.push_back(form);
        owner.push_back(i);
        return;
      }
    throw std::logic_error("synth: layout lost a coordinate");
  };
  for (auto [v, m] : const_runs)
    for (int64_t r = 0; r < m; ++r) claim(Affine(v));
  for (const auto& blk : blocks) {
    for (int64_t r = 0; r < blk.a; ++r) claim(blk.base);
    for (int64_t r = 0; r < blk.b; ++r) claim(-blk.base);
  }
  const int64_t n_base = static_cast<int64_t>(layout.size());

  // Plan derivations; each derived coordinate is f(i) -/+ f(j) of available ones.
  std::map<Affine, int64_t> avail;  // form -> layout position, base positions first
  for (int64_t p = 0; p < n_base; ++p) avail.emplace(layout[p], p);
  std::vector<int64_t> pending;
  for (int64_t i = 0; i < n; ++i)
    if (!used[i] && !coords[i].is_zero()) pending.push_back(i);
  std::vector<Derivation> plan;
  std::vector<int64_t> scratch;  // constant values added only as operands
  auto find_pair = [&](const Affine& f) -> std::optional<std::tuple<int64_t, int64_t, ArithMode>> {
    std::optional<std::tuple<int64_t, int64_t, ArithMode>> best;
    int score = 99;
    for (ArithMode mode : {ArithMode::Diff, ArithMode::Sum})
      for (const auto& [fa, pa] : avail) {
        Affine need = mode == ArithMode::Diff ? fa - f : f - fa;
        auto it = avail.find(need);
        if (it == avail.end() || it->second == pa) continue;
        int s = (mode == ArithMode::Sum ? 4 : 0) + (pa >= n_base) + (it->second >= n_base);
        if (s < score) {
          score = s;
          best = std::make_tuple(pa, it->second, mode);
        }
      }
    return best;
  };
  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const Affine& f = coords[*it];
      auto pr = find_pair(f);
      if (!pr) {
        ++it;
        continue;
      }
      used[*it] = true;
      int64_t pos = static_cast<int64_t>(layout.size());
      layout.push_back(f);
      owner.push_back(*it);
      plan.push_back({pos, std::get<0>(*pr), std::get<1>(*pr), std::get<2>(*pr)});
      avail.emplace(f, pos);
      it = pending.erase(it);
      progress = true;
    }
    if (progress) continue;
    // Fall back to a scratch constant d with f = X - d for some base X.
    bool added = false;
    for (int64_t idx : pending) {
      for (int64_t p = 0; p < n_base && !added; ++p) {
        Affine d = layout[p] - coords[idx];
        if (!d.is_constant() || d.c == 0 || avail.count(d)) continue;
        scratch.push_back(d.c);
        avail.emplace(d, -1 - static_cast<int64_t>(scratch.size() - 1));  // fixed below
        added = true;
      }
      if (added) break;
    }
    if (!added) {
      int64_t idx = pending.front();
      throw std::invalid_argument("unsupported coordinate form at index " + std::to_string(idx) + ": " +
                                  coords[idx].str());
    }
  }
  for (int64_t i : zero_coords) {
    used[i] = true;
    layout.push_back(Affine(0));
    owner.push_back(i);
  }
  const int64_t n_main = static_cast<int64_t>(layout.size());
  for (int64_t v : scratch) {
    layout.push_back(Affine(v));
    owner.push_back(-1);
  }
  // Scratch operands got placeholder positions; resolve them now.
  for (auto& d : plan)
    for (int64_t* p : {&d.i, &d.j})
      if (*p < 0) *p = n_main + (-1 - *p);

  SynthResult res;
  res.length = static_cast<size_t>(n);
  auto layout_to_template = [&](int64_t lo, int64_t hi) {
    std::vector<int64_t> v;
    for (int64_t p = lo; p < hi; ++p)
      if (owner[p] >= 0) v.push_back(owner[p]);
    return v;
  };

  // Base blocks.
  std::vector<std::pair<ExprPtr, int64_t>> parts;
  int64_t at = 0;
  for (auto [v, m] : const_runs) {
    ExprPtr e = hm::singleton(v);
    for (int64_t r = 0; r + 1 < m; ++r) e = hm::dup_last(e, r);
    std::string d = "{(" + std::to_string(v) + ")} from Z and S";
    if (m > 1) d += ", duplicated " + std::to_string(m - 1) + " times";
    res.steps.push_back({"singletons + duplication", d, layout_to_template(at, at + m)});
    parts.push_back({e, at});
    at += m;
  }
  for (const auto& blk : blocks) {
    ExprPtr e;
    std::string d;
    std::string lemma;
    std::string xs = blk.base.str();
    std::string dom = blk.threshold ? xs + " > " + std::to_string(*blk.threshold) : xs + " in Z";
    if (blk.a > 0 && blk.b > 0) {
      lemma = "opposite pairs";
      if (!blk.threshold) {
        e = hm::opposite_pairs_all();
      } else if (*blk.threshold == 0) {
        e = hm::opposite_pairs();
      } else {
        e = iota(hm::opposite_pairs_all(), zeta_at(1, hm::above(*blk.threshold)));
        lemma += " + threshold sign set";
      }
      for (int64_t r = 1; r < blk.b; ++r) e = hm::dup_last(e, r);
      for (int64_t r = 1; r < blk.a; ++r) e = hm::dup_first(e, 0);
      d = "(" + xs + ", " + (-blk.base).str() + ") with " + dom;
      if (blk.b > 1) d += "; last coordinate duplicated " + std::to_string(blk.b - 1) + " times";
      if (blk.a > 1) d += "; first coordinate duplicated " + std::to_string(blk.a - 1) + " times by reflection";
      if (blk.b > 1) lemma += " + duplication";
      if (blk.a > 1) lemma += " + reflected duplication";
    } else {
      bool pos = blk.a > 0;
      int64_t m = pos ? blk.a : blk.b;
      if (!blk.threshold) e = zeta(Z());
      else if (pos) e = *blk.threshold == 0 ? hm::sign_plus() : hm::above(*blk.threshold);
      else e = *blk.threshold == 0 ? hm::sign_minus() : hm::below(-*blk.threshold);
      for (int64_t r = 0; r + 1 < m; ++r) e = hm::dup_last(e, r);
      lemma = "sign set";
      if (m > 1) lemma += " + duplication";
      d = "(" + (pos ? xs : (-blk.base).str()) + ") with " + dom;
      if (m > 1) d += ", duplicated " + std::to_string(m - 1) + " times";
    }
    int64_t m = blk.a + blk.b;
    res.steps.push_back({lemma, "parameter " + blk.name + ": " + d, layout_to_template(at, at + m)});
    parts.push_back({e, at});
    at += m;
  }
  for (size_t s = 0; s < scratch.size(); ++s) {
    int64_t p = n_main + static_cast<int64_t>(s);
    parts.push_back({hm::singleton(scratch[s]), p});
    res.steps.push_back({"singletons", "scratch operand {(" + std::to_string(scratch[s]) + ")} at position " +
                                           std::to_string(p) + ", erased at the end", {}});
  }
  ExprPtr base = hm::shifted_sum(parts);
  {
    std::string d;
    for (const auto& [e, s] : parts) d += (d.empty() ? "" : " + ") + std::string("sigma^") + std::to_string(s);
    res.steps.push_back({"sum", "disjoint shifted blocks: " + d, {}});
  }

  ExprPtr cur = base;
  for (const auto& d : plan) {
    auto in_base = [&](int64_t p) { return p < n_base || p >= n_main; };
    bool from_base = in_base(d.i) && in_base(d.j);
    ExprPtr pairs = hm::pair_extract(from_base ? base : cur, d.i, d.j);
    cur = hm::replace_coord(cur, d.i, d.j, d.target, d.mode, pairs);
    std::string op = d.mode == ArithMode::Diff ? " - " : " + ";
    res.steps.push_back({std::string("replace coordinate (triples, ") + (d.mode == ArithMode::Diff ? "diff" : "sum") + ")",
                         "position " + std::to_string(d.target) + " := f(" + std::to_string(d.i) + ")" + op + "f(" +
                             std::to_string(d.j) + ") = " + layout[d.target].str() + "; pairs extracted from the " +
                             (from_base ? "base sum" : "current set"),
                         {owner[d.target]}});
  }
  if (!zero_coords.empty())
    res.steps.push_back({"zero coordinates", "left at 0 (no operation needed)", zero_coords});

  std::map<int64_t, int64_t> mp;
  for (int64_t p = 0; p < static_cast<int64_t>(layout.size()); ++p)
    mp[p] = owner[p] >= 0 ? owner[p] : p;
  Permutation beta = Permutation::from_map(mp);
  if (!beta.is_identity()) {
    cur = perm(beta, cur);
    res.steps.push_back({"permutation", "layout to template order " + beta.str(), {}});
  }
  if (!scratch.empty()) {
    std::vector<int64_t> keep;
    for (int64_t i = 0; i < n; ++i) keep.push_back(i);
    cur = eps(keep, cur);
    res.steps.push_back({"extract", "drop scratch operands", {}});
  }
  res.grouped_expr = cur;
  res.expr = cur;
  if (alpha && !alpha->is_identity()) {
    res.expr = perm(alpha->inverse(), cur);
    res.steps.push_back({"permutation", "alpha^{-1} = " + alpha->inverse().str() + " back to the relator order", {}});
  }
  res.steps.push_back({"lowering", "every auxiliary operation rewrites into Z, S and the nine core operations (lower)", {}});

  res.notes.push_back("opposite pairs: C3 liberates index " + std::to_string(hm::opposite_pairs_liberation_index()) +
                      " (index 2 fails the contract check)");
  res.notes.push_back("triples: extract positions {" + join_ints(hm::triple_extract_positions()) +
                      "} ({0,1,2} fails the contract check)");
  res.notes.push_back("windows: opposite pairs need width >= 4(n_max+1); triples need width >= 8(max(|p|,|q|,|p-q|)+1)");
  return res;
}

}  // namespace higman
