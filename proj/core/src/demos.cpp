#include "higman/demos.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace higman {

namespace {

Affine P(const char* name, int64_t coef = 1, int64_t c = 0) { return Affine::param(name, coef) + Affine(c); }

RunList zinfty_display() {
  Affine k = P("k"), l = P("l");
  return {{1, 11}, {-1, 11}, {k, 2}, {-k, 3}, {l, 3}, {-l, 2}, {k - l, 2}, {l - k, 1}};
}

RunList metabelian_display() {
  Affine k = P("k"), l = P("l"), u = P("u"), v = P("v");
  return {{1, 40}, {-1, 49}, {k, 6},     {-k, 7},    {l, 6},     {-l, 6},    {u, 7},    {-u, 6},    {v, 6},
          {-v, 6}, {l - k, 1}, {l - u, 1}, {v - u, 1}, {v - l, 1}, {k - l, 1}, {k - v, 1}, {u - v, 1}};
}

RunList q_display() {
  Affine s = P("s");
  return {{1, 6}, {-1, 6}, {s, 2}, {-s, 2}, {Affine(1) - s, 1}, {s - 1, 2}};
}

std::vector<Preset> make_presets() {
  std::vector<Preset> v;
  v.push_back({"zinfty", "gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n", EmbeddingVariant::Short, {},
               {{"k", {1, 2, 3}}, {"l", {1, 2, 3}}},
               [](const std::map<std::string, int64_t>&) { return std::vector<std::optional<RunList>>{zinfty_display()}; },
               {parse_perm("(0)(1 24 7 22 6)(2 11 30 9 32 10 14 3 25 33 29 8)"
                           "(4 12 15 27 31 28 20 18 17 34 21 5 13 16)(19 26)(23)")}});
  v.push_back({"metabelian", "gen a[i] : i >= 1\nrel [[a[k],a[l]],[a[u],a[v]]] : k,l,u,v >= 1\n",
               EmbeddingVariant::Short, {},
               {{"k", {1, 2}}, {"l", {1, 2}}, {"u", {1, 2}}, {"v", {1, 2}}},
               [](const std::map<std::string, int64_t>&) {
                 return std::vector<std::optional<RunList>>{metabelian_display()};
               },
               {std::nullopt}});
  v.push_back({"q", "gen a[i] : i >= 1\nrel a[s]^s a[s-1]^-1 : s >= 2\n", EmbeddingVariant::Short, {},
               {{"s", {2, 3, 4}}},
               [](const std::map<std::string, int64_t>&) { return std::vector<std::optional<RunList>>{q_display()}; },
               {std::nullopt}});
  v.push_back({"pruefer",
               "gen a[i] : i >= 1\nrel a[1]^p : p in {2,3}\nrel a[s+1]^p a[s]^-1 : s >= 1; p in {2,3}\n",
               EmbeddingVariant::General, {"p"},
               {{"p", {2, 3}}, {"s", {1, 2, 3}}},
               [](const std::map<std::string, int64_t>& f) {
                 int64_t p = f.at("p");
                 Affine s = P("s");
                 RunList f0{{1, 5 * p + 2}, {-1, 5 * p}, {2, p - 1}, {-2, p}};
                 RunList fs{{1, 3 * p + 4}, {-1, 3 * p + 3}, {s, 1}, {-s, 1}, {s + 1, p}, {-s - 1, p}};
                 return std::vector<std::optional<RunList>>{f0, fs};
               },
               {std::nullopt, std::nullopt}});
  v.push_back({"burnside", "gen a[i] : i >= 1\nrel a[s]^n : s >= 1; n in {2,3}\n", EmbeddingVariant::General, {"n"},
               {{"n", {2, 3}}, {"s", {1, 2, 3}}},
               [](const std::map<std::string, int64_t>& f) {
                 int64_t n = f.at("n");
                 Affine s = P("s");
                 RunList d{{1, 3 * n - 2}, {-1, 3 * n}, {2, n - 1}, {-2, n}, {s, 2 * n}, {-s, 2 * n}};
                 return std::vector<std::optional<RunList>>{d};
               },
               {std::nullopt}});
  return v;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> v = make_presets();
  return v;
}

std::string runs_str(const RunList& r) {
  std::string s = "(";
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) s += ", ";
    std::string f = r[i].first.str();
    bool compound = f.find_first_of("+-", 1) != std::string::npos;
    if (r[i].second != 1) s += std::to_string(r[i].second) + "x";
    s += (compound && r[i].second != 1) ? "(" + f + ")" : f;
  }
  return s + ")";
}

std::string fixed_str(const std::map<std::string, int64_t>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
  return s;
}

// All assignments of the template's own parameters from the ranges.
std::vector<std::map<std::string, int64_t>> assignments(const SeqTemplate& t, const ParamRanges& ranges) {
  std::vector<std::map<std::string, int64_t>> out{{}};
  for (const auto& p : t.params) {
    std::vector<int64_t> vals;
    auto it = ranges.find(p.name);
    if (it != ranges.end()) {
      for (int64_t x : it->second)
        if (p.admits(x)) vals.push_back(x);
    } else if (p.values) {
      vals = *p.values;
    } else {
      vals = {p.lower.value_or(1)};
    }
    std::vector<std::map<std::string, int64_t>> next;
    for (const auto& a : out)
      for (int64_t x : vals) {
        auto b = a;
        b[p.name] = x;
        next.push_back(b);
      }
    out = std::move(next);
  }
  return out;
}

bool family_contains(const SeqTemplate& t, const Seq& g) {
  int64_t bound = g.max_abs() + 3;
  std::vector<std::vector<int64_t>> doms;
  for (const auto& p : t.params) {
    std::vector<int64_t> d;
    if (p.values) {
      d = *p.values;
    } else {
      int64_t lo = p.lower.value_or(-bound);
      for (int64_t x = lo; x <= std::max(lo, bound); ++x) d.push_back(x);
    }
    doms.push_back(d);
  }
  std::map<std::string, int64_t> vals;
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == doms.size()) return t.instantiate(vals) == g;
    for (int64_t x : doms[i]) {
      vals[t.params[i].name] = x;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

ParamRanges parse_param_ranges(const std::string& text) {
  ParamRanges out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad parameter range '" + item + "'");
    std::string name = item.substr(0, eq), rhs = item.substr(eq + 1);
    try {
      auto dots = rhs.find("..");
      std::vector<int64_t> vals;
      if (dots == std::string::npos) {
        vals.push_back(std::stoll(rhs));
      } else {
        int64_t lo = std::stoll(rhs.substr(0, dots)), hi = std::stoll(rhs.substr(dots + 2));
        if (hi < lo || hi - lo > 1000) throw std::invalid_argument("range");
        for (int64_t x = lo; x <= hi; ++x) vals.push_back(x);
      }
      auto& dst = out[name];
      for (int64_t x : vals)
        if (std::find(dst.begin(), dst.end(), x) == dst.end()) dst.push_back(x);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad parameter range '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> demo_names() {
  std::vector<std::string> v;
  for (const auto& p : presets()) v.push_back(p.name);
  return v;
}

const Preset& preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown demo '" + name + "'");
}

RunList value_runs(const SeqTemplate& grouped) {
  RunList r;
  for (const auto& a : grouped.coords) {
    auto it = std::find_if(r.begin(), r.end(), [&](const auto& x) { return x.first == a; });
    if (it == r.end()) r.push_back({a, 1});
    else ++it->second;
  }
  return r;
}

bool same_runs(const RunList& a, const RunList& b) {
  std::map<Affine, int64_t> x, y;
  for (const auto& [f, m] : a)
    if (m) x[f] += m;
  for (const auto& [f, m] : b)
    if (m) y[f] += m;
  return x == y;
}

std::vector<PresetFamily> preset_families(const Preset& p, const ParamRanges& ranges) {
  std::vector<std::map<std::string, int64_t>> fixes{{}};
  for (const auto& name : p.fixed) {
    auto it = ranges.find(name);
    if (it == ranges.end() || it->second.empty())
      throw std::invalid_argument("demo " + p.name + " needs values for " + name);
    std::vector<std::map<std::string, int64_t>> next;
    for (const auto& f : fixes)
      for (int64_t x : it->second) {
        auto g = f;
        g[name] = x;
        next.push_back(g);
      }
    fixes = std::move(next);
  }
  Presentation base = parse_presentation(p.presentation);
  std::vector<PresetFamily> out;
  for (const auto& fix : fixes) {
    Presentation pr = fix.empty() ? base : fix_params(base, fix);
    Presentation two = embed_presentation(pr, p.variant);
    auto displays = p.display(fix);
    for (size_t r = 0; r < two.relators.size(); ++r) {
      PresetFamily fam;
      fam.fixed = fix;
      fam.label = "relator " + std::to_string(r + 1) + (fix.empty() ? "" : " (" + fixed_str(fix) + ")");
      fam.tmpl = encode_template(two.relators[r]);
      if (r < p.reference_alpha.size() && p.reference_alpha[r]) {
        fam.grouping.alpha = *p.reference_alpha[r];
        fam.grouping.grouped = apply_perm(fam.grouping.alpha, fam.tmpl);
      } else {
        fam.grouping = find_grouping_perm(fam.tmpl);
      }
      if (r < displays.size()) fam.display = displays[r];
      out.push_back(std::move(fam));
    }
  }
  return out;
}

std::vector<Seq> family_mutants(const SeqTemplate& t, const Seq& f, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Seq> out;
  std::set<Seq> seen;
  int64_t n = static_cast<int64_t>(t.coords.size());
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 50 * count + 100; ++tries) {
    int64_t pos = std::uniform_int_distribution<int64_t>(0, n - 1)(rng);
    int64_t delta = std::uniform_int_distribution<int64_t>(1, 3)(rng);
    if (rng() & 1) delta = -delta;
    std::vector<int64_t> c = f.window(0, n - 1);
    c[static_cast<size_t>(pos)] += delta;
    Seq g(0, c);
    if (seen.count(g) || family_contains(t, g)) continue;
    seen.insert(g);
    out.push_back(g);
  }
  return out;
}

std::string DemoReport::summary_text() const {
  std::string s;
  for (const auto& [k, v] : summary) s += k + "=" + v + "\n";
  return s;
}

DemoReport run_demo(const std::string& name, const DemoOptions& opt) {
  Preset p = preset(name);
  if (opt.variant) p.variant = *opt.variant;
  ParamRanges ranges = p.ranges;
  for (const auto& [k, v] : opt.params) ranges[k] = v;

  DemoReport rep;
  rep.name = name;
  std::ostringstream os;
  os << "== demo " << name << " ==\n";
  os << "variant: " << variant_name(p.variant) << "\n";
  os << "params:";
  for (const auto& [k, v] : ranges) {
    os << " " << k << "=";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  }
  os << "\nmutations per instance: " << opt.mutations << "\n";
  os << "instances per family: " << (opt.instance_limit ? std::to_string(opt.instance_limit) : "all") << "\n";
  os << "membership: " << (opt.membership ? "on" : "off") << "\n\n";
  os << "[presentation]\n" << parse_presentation(p.presentation).str() << "\n";

  bool ok = true;
  size_t flags = 0, members = 0, members_ok = 0, mutants = 0, rejected = 0;
  std::map<std::string, int64_t> last_fix{{"", 0}};
  for (const auto& fam : preset_families(p, ranges)) {
    if (fam.fixed != last_fix) {
      Presentation pr = parse_presentation(p.presentation);
      if (!fam.fixed.empty()) pr = fix_params(pr, fam.fixed);
      os << "[two-generator presentation" << (fam.fixed.empty() ? "" : " " + fixed_str(fam.fixed)) << "]\n"
         << embed_presentation(pr, p.variant).str() << "\n";
      last_fix = fam.fixed;
    }
    FamilyReport fr;
    fr.label = fam.label;
    fr.tmpl = fam.tmpl;
    fr.alpha = fam.grouping.alpha;
    fr.grouped = fam.grouping.grouped;
    fr.runs = value_runs(fr.grouped);
    fr.display = fam.display;
    os << "[" << fam.label << "]\n";
    os << "template: " << fr.tmpl.str() << "\n";
    os << "length: " << fr.tmpl.coords.size() << "\n";
    os << "grouping permutation: " << fr.alpha.str() << "\n";
    os << "grouped: " << fr.grouped.grouped_str() << "\n";
    os << "value multiset: " << runs_str(fr.runs) << "\n";
    int64_t run_total = 0;
    for (const auto& [f, m] : fr.runs) run_total += m;
    bool consistent = run_total == static_cast<int64_t>(fr.tmpl.coords.size());
    os << "run multiplicities sum: " << run_total << (consistent ? " (= length)" : " (!= length)") << "\n";
    if (!consistent) {
      ok = false;
      fr.failures.push_back("run multiplicities do not sum to the length");
    }
    if (fr.display) {
      fr.display_match = same_runs(fr.runs, *fr.display);
      os << "reference display: " << runs_str(*fr.display) << "\n";
      if (fr.display_match) {
        os << "display check: match (up to run order)\n";
      } else {
        int64_t shown = 0;
        for (const auto& [f, m] : *fr.display) shown += m;
        std::ostringstream fl;
        fl << "DISCREPANCY: reference display sums to " << shown << ", encoder gives " << fr.tmpl.coords.size()
           << " coordinates; differing values:";
        std::map<Affine, int64_t> x, y;
        for (const auto& [f, m] : fr.runs) x[f] += m;
        for (const auto& [f, m] : *fr.display) y[f] += m;
        std::set<Affine> keys;
        for (const auto& [f, m] : x) keys.insert(f);
        for (const auto& [f, m] : y) keys.insert(f);
        for (const auto& k : keys)
          if (x[k] != y[k]) fl << " " << k.str() << " (" << x[k] << " vs " << y[k] << ")";
        fr.flags.push_back(fl.str());
      }
    }
    if (name == "burnside") {
      int64_t n = fam.fixed.at("n");
      std::ostringstream fl;
      fl << "DISCREPANCY: stated length 12n-11 = " << 12 * n - 11 << " but the reference runs sum to " << 12 * n - 3
         << " and the encoder gives " << fr.tmpl.coords.size();
      fr.flags.push_back(fl.str());
    }
    for (const auto& f : fr.flags) os << f << "\n";
    flags += fr.flags.size();

    SynthResult syn;
    try {
      syn = synth_from_grouped_template(fr.grouped, fr.alpha);
    } catch (const std::exception& ex) {
      ok = false;
      fr.failures.push_back(std::string("synthesis failed: ") + ex.what());
      os << "synthesis: FAILED " << ex.what() << "\n\n";
      rep.families.push_back(std::move(fr));
      continue;
    }
    fr.synth_log = syn.log();
    fr.dag_size = expr_dag_size(syn.expr);
    os << "[synthesis " << fam.label << "]\n" << fr.synth_log;
    os << "expression: " << fr.dag_size << " distinct nodes, " << expr_dag_size(lower(syn.expr))
       << " after lowering\n";

    if (opt.membership) {
      os << "[membership " << fam.label << "]\n";
      auto insts = assignments(fr.tmpl, ranges);
      if (opt.instance_limit > 0 && insts.size() > opt.instance_limit) {
        // evenly spaced sample, first and last included
        std::vector<std::map<std::string, int64_t>> pick;
        size_t n = insts.size(), m = opt.instance_limit;
        for (size_t i = 0; i < m; ++i) pick.push_back(insts[m == 1 ? 0 : i * (n - 1) / (m - 1)]);
        os << "  checking " << m << " of " << n << " instances\n";
        insts = std::move(pick);
      }
      for (size_t ii = 0; ii < insts.size(); ++ii) {
        Seq f = fr.tmpl.instantiate(insts[ii]);
        Window W = syn.window_for(f.max_abs());
        bool in = false;
        std::string err;
        try {
          in = member(syn.expr, f, W, opt.eval, 0).member;
        } catch (const std::exception& ex) {
          err = ex.what();
        }
        ++fr.members_checked;
        if (in) ++fr.members_ok;
        std::string inst = insts[ii].empty() ? "-" : fixed_str(insts[ii]);
        os << "  " << inst << " W=" << W.str() << " member=" << (in ? "yes" : "NO") << (err.empty() ? "" : " (" + err + ")");
        if (!in) {
          ok = false;
          fr.failures.push_back("instance " + inst + " " + f.str() + " rejected");
        }
        size_t rej = 0, tot = 0;
        for (const auto& g : family_mutants(fr.tmpl, f, opt.mutations, 7919 * (ii + 1) + rep.families.size())) {
          ++tot;
          bool gin = true;
          try {
            gin = member(syn.expr, g, W, opt.eval, 0).member;
          } catch (const std::exception&) {
            gin = true;
          }
          if (!gin) {
            ++rej;
          } else {
            ok = false;
            fr.failures.push_back("mutant " + g.str() + " accepted");
          }
        }
        fr.mutants_checked += tot;
        fr.mutants_rejected += rej;
        os << " mutants rejected " << rej << "/" << tot << "\n";
      }
    }
    for (const auto& f : fr.failures) os << "FAIL: " << f << "\n";
    os << "\n";
    members += fr.members_checked;
    members_ok += fr.members_ok;
    mutants += fr.mutants_checked;
    rejected += fr.mutants_rejected;
    rep.families.push_back(std::move(fr));
  }

  rep.ok = ok;
  size_t matches = 0, displayed = 0;
  for (const auto& f : rep.families)
    if (f.display) {
      ++displayed;
      matches += f.display_match;
    }
  rep.summary = {{"demo", name},
                 {"variant", variant_name(p.variant)},
                 {"families", std::to_string(rep.families.size())},
                 {"display_matches", std::to_string(matches) + "/" + std::to_string(displayed)},
                 {"discrepancy_flags", std::to_string(flags)},
                 {"members_accepted", std::to_string(members_ok) + "/" + std::to_string(members)},
                 {"mutants_rejected", std::to_string(rejected) + "/" + std::to_string(mutants)},
                 {"status", ok ? "pass" : "fail"}};
  os << "[summary]\n" << rep.summary_text();
  rep.text = os.str();
  return rep;
}

}  // namespace higman
