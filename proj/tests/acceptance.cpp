// Acceptance driver: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "higman/demos.hpp"
#include "higman/embed2.hpp"
#include "higman/heval.hpp"
#include "higman/hmachine.hpp"
#include "higman/synth.hpp"
#include "testutil.hpp"

using namespace higman;
using namespace higman::ex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> lines;  // printed under the criterion line

  void fail(const std::string& why) {
    pass = false;
    if (lines.size() < 40) lines.push_back("FAIL " + why);
  }
  void check(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

const char* kZinf = "gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n";
const char* kAlpha =
    "(0)(1 24 7 22 6)(2 11 30 9 32 10 14 3 25 33 29 8)(4 12 15 27 31 28 20 18 17 34 21 5 13 16)(19 26)(23)";

SeqTemplate zinf_template() {
  return encode_template(embed_presentation(parse_presentation(kZinf), EmbeddingVariant::Short).relators[0]);
}

std::vector<int64_t> golden_f(int64_t k, int64_t l) {
  return {1,  -k, -1, -k, -1, -1, 1, k, 1, k - l, -1, -l, -1, -1, 1, l, 1, l - k,
          -1, -k, -1, 1,  1,  k,  1, k - l, -1, -l, -1, 1, 1, l, 1, l, -1};
}

std::vector<int64_t> golden_grouped(int64_t k, int64_t l) {
  std::vector<int64_t> v;
  auto put = [&](int64_t x, int n) { v.insert(v.end(), n, x); };
  put(1, 11), put(-1, 11), put(k, 2), put(-k, 3), put(l, 3), put(-l, 2), put(k - l, 2), put(l - k, 1);
  return v;
}

std::string vec_str(const std::vector<int64_t>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Outcome c1() {
  Outcome o;
  SeqTemplate t = zinf_template();
  Presentation two = embed_presentation(parse_presentation(kZinf), EmbeddingVariant::Short);
  Permutation alpha = parse_perm(kAlpha);
  o.check(t.coords.size() == 35, "template length " + std::to_string(t.coords.size()));
  for (int64_t k = 1; k <= 4; ++k)
    for (int64_t l = 1; l <= 4; ++l) {
      std::map<std::string, int64_t> v{{"k", k}, {"l", l}};
      std::string at = " at (k,l)=(" + std::to_string(k) + "," + std::to_string(l) + ")";
      Seq direct = encode_word(two.relators[0].instantiate(v));
      Seq f = t.instantiate(v);
      // k = l makes the commutator trivial; the template keeps its positions as zeros
      if (k != l) o.check(direct == f, "template and direct encoding differ" + at);
      else o.check(direct.is_zero(), "[a_k, a_k] does not reduce to the empty word" + at);
      o.check(f.lo() == 0 && f.window(0, 34) == golden_f(k, l),
              "f = " + vec_str(f.window(0, 34)) + " want " + vec_str(golden_f(k, l)) + at);
      Seq g = apply_perm(alpha, f);
      o.check(g.lo() == 0 && g.window(0, 34) == golden_grouped(k, l), "grouped " + g.str() + at);
    }
  std::string gs = apply_perm(alpha, t).grouped_str();
  o.check(gs == "(11x1, 11x-1, 2xk, 3x-k, 3xl, 2x-l, 2x(k-l), (l-k))", "grouped form " + gs);
  o.detail = "16 instances, grouped " + gs;
  return o;
}

Outcome c2() {
  Outcome o;
  auto w = conjugator_words(Seq(0, {5, 2, -1}));
  std::string want = "c^-2 b c b^-2 c b^-5 a b^5 c^-1 b^2 c^-1 b^-1 c^2";
  o.check(w.a_f.str() == want, "a_f = " + w.a_f.str());
  o.check(w.a_f == conjugate(parse_word("a"), w.b_f), "a_f is not a conjugate of a by b_f");
  o.detail = "a_f = " + w.a_f.str();
  return o;
}

Outcome c3() {
  Outcome o;
  std::mt19937_64 rng(20240901);
  size_t words = 0, codes = 0;
  for (int t = 0; t < 1000; ++t) {
    Word w = testutil::random_bc_word(rng, 40);
    Seq f = encode_word(w);
    words += decode_seq(f) == w;
  }
  for (int t = 0; t < 1000; ++t) {
    std::vector<int64_t> c(std::uniform_int_distribution<int>(0, 30)(rng));
    for (size_t i = 0; i < c.size(); ++i) {
      int64_t x = std::uniform_int_distribution<int64_t>(1, 9)(rng);
      c[i] = (rng() & 1) ? x : -x;
      if (i == 0 && rng() % 3 == 0) c[i] = 0;  // a word may start with c
    }
    Seq f(0, c);
    codes += encode_word(decode_seq(f)) == f;
  }
  o.check(words == 1000, std::to_string(1000 - words) + " word roundtrips failed");
  o.check(codes == 1000, std::to_string(1000 - codes) + " code roundtrips failed");
  o.detail = std::to_string(words) + "/1000 words, " + std::to_string(codes) + "/1000 codes";
  return o;
}

std::vector<Window> windows(int64_t lo, int64_t hi, int64_t max_width) {
  std::vector<Window> v;
  for (int64_t w = 1; w <= max_width; ++w)
    for (int64_t a = lo; a + w - 1 <= hi; ++a) v.push_back({a, a + w - 1});
  return v;
}

Outcome c4() {
  Outcome o;
  auto cases = corpus::auxiliary_cases();
  auto ws = windows(-6, 6, 6);
  size_t checks = 0, bad = 0;
  for (const auto& e : cases) {
    ExprPtr l = lower(e);
    if (!is_core_only(l)) o.fail("lowering left an auxiliary node in " + print_expr(e));
    for (const auto& W : ws) {
      ++checks;
      if (eval_enum(e, W, 4) != eval_enum(l, W, 4)) {
        ++bad;
        o.fail(print_expr(e) + " on " + W.str());
      }
    }
  }
  o.detail = std::to_string(cases.size()) + " operations x " + std::to_string(ws.size()) + " windows, M=4, " +
             std::to_string(checks - bad) + "/" + std::to_string(checks) + " equal";
  return o;
}

Outcome c5() {
  Outcome o;
  auto ws = windows(-3, 3, 6);
  size_t checks = 0, bad = 0;
  for (const auto& text : corpus::expressions()) {
    ExprPtr e = parse_expr(text);
    for (const auto& W : ws) {
      PatternSet ps = eval_symbolic(e, W);
      for (int64_t M = 1; M <= 4; ++M) {
        ++checks;
        if (truncate(expand(ps, M), W, M) != eval_enum(e, W, M)) {
          ++bad;
          o.fail(text + " on " + W.str() + " M=" + std::to_string(M));
        }
      }
    }
  }
  o.detail = std::to_string(corpus::expressions().size()) + " expressions, " + std::to_string(checks - bad) + "/" +
             std::to_string(checks) + " agree";
  return o;
}

Outcome c6() {
  Outcome o;
  std::vector<std::pair<std::string, ExprPtr>> leaves = {
      {"Z", Z()}, {"S", S()}, {"tau S", tau(S())}, {"zeta_1 Z", zeta_at(1, Z())}, {"rho S", rho(S())}};
  size_t checks = 0;
  for (const auto& W : windows(-3, 3, 6)) {
    for (int64_t M = 2; M <= 4; ++M) {
      ++checks;
      SeqSet a = eval_enum(rho(sigma(rho(S()))), W, M), b = eval_enum(sigma_pow(-1, S()), W, M);
      o.check(a == b, "rho sigma rho S != sigma^-1 S on " + W.str());
      o.check(truncate(expand(eval_symbolic(rho(sigma(rho(S()))), W), M), W, M) == b,
              "symbolic rho sigma rho S on " + W.str());
    }
    for (const auto& [name, x] : leaves) {
      ++checks;
      const int64_t M = 3;
      // slack lets witnesses sit outside the child window (rho S on [1,1] needs (1,0)@-1)
      EvalOptions slack;
      slack.window.witness_slack = 2;
      SeqSet got = eval_enum(rho(pi(rho(x))), W, M, slack);
      // brute force: values on i >= 0 come from a member of x, values on i < 0 are
      // free. Witnesses may reach past W on the left and past M there.
      Window B{std::min<int64_t>(W.lo, 0) - 4, std::max<int64_t>(W.hi, 0)};
      SeqSet base = eval_enum(x, B, M + 2), want;
      std::vector<int64_t> neg;
      for (int64_t i = W.lo; i <= W.hi && i < 0; ++i) neg.push_back(i);
      for (const auto& g : base) {
        bool fits = true;
        for (int64_t i = 0; i <= B.hi; ++i)
          fits &= W.contains(i) ? std::abs(g.at(i)) <= M : g.at(i) == 0;
        if (!fits) continue;
        std::vector<int64_t> c = g.window(W.lo, W.hi);
        std::function<void(size_t)> fill = [&](size_t j) {
          if (j == neg.size()) {
            want.insert(Seq(W.lo, c));
            return;
          }
          for (int64_t v = -M; v <= M; ++v) {
            c[static_cast<size_t>(neg[j] - W.lo)] = v;
            fill(j + 1);
          }
        };
        fill(0);
      }
      o.check(got == want, "rho pi rho (" + name + ") on " + W.str() + ": " + std::to_string(got.size()) + " vs " +
                               std::to_string(want.size()));
      o.check(got == eval_enum(pi_prime(x), W, M, slack), "rho pi rho (" + name + ") != pi' on " + W.str());
      o.check(eval_enum(rho(pi(rho(x))), W, M) == eval_enum(pi_prime(x), W, M),
              "rho pi rho (" + name + ") != pi' on " + W.str() + " without slack");
    }
  }
  // The negating reading of rho would send sigma S to sigma S, not sigma^-1 S.
  Window W{-2, 2};
  SeqSet s = eval_enum(sigma(S()), W, 3), neg;
  for (const auto& f : eval_enum(S(), W, 3)) {
    std::vector<int64_t> c = f.window(W.lo, W.hi);
    for (auto& x : c) x = -x;
    neg.insert(Seq(W.lo, c));
  }
  o.check(neg != eval_enum(S(), W, 3), "S is closed under negation, the negation check is vacuous");
  o.check(s != eval_enum(sigma_pow(-1, S()), W, 3), "sigma S equals sigma^-1 S");
  o.detail = std::to_string(checks) + " checks over windows of width <= 6 in [-3,3]";
  return o;
}

void verify_into(Outcome& o, size_t& n, const BuilderSpec& s, const Window& W, int64_t M) {
  ++n;
  VerifyReport r = verify_builder(s, W, M, true);
  if (!r.ok()) {
    std::string why = s.describe() + " on " + W.str() + " M=" + std::to_string(M);
    for (const auto& f : r.missing) why += " missing " + f.str();
    for (const auto& f : r.extra) why += " extra " + f.str();
    o.fail(why);
  }
}

// The intermediate of the Z-infinity construction that precedes the last
// coordinate replacement: eleven 1s, eleven -1s, then (k,k,-k,-k,-k,l,l,l,-l,-l).
Operand zinf_intermediate() {
  auto block = [](int a, int b) {
    ExprPtr e = hm::opposite_pairs();
    for (int r = 1; r <= b; ++r) e = hm::dup_last(e, r);
    for (int r = 0; r < a - 1; ++r) e = hm::dup_first(e, 0);
    return e;
  };
  ExprPtr ones = hm::singleton(1), mones = hm::singleton(-1);
  for (int r = 0; r < 10; ++r) {
    ones = hm::dup_last(ones, r);
    mones = hm::dup_last(mones, r);
  }
  Operand op;
  op.expr = hm::shifted_sum({{ones, 0}, {mones, 11}, {block(2, 2), 22}, {block(3, 1), 27}});
  op.members = [](int64_t M) {
    SeqSet s;
    for (int64_t k = 1; k <= M; ++k)
      for (int64_t l = 1; l <= M; ++l) {
        std::vector<int64_t> c(11, 1);
        c.resize(22, -1);
        for (int64_t x : {k, k, -k, -k, -k, l, l, l, -l, -l}) c.push_back(x);
        s.insert(Seq(0, c));
      }
    return s;
  };
  op.desc = "Z-infinity intermediate (11x1, 11x-1, k,k,-k,-k,-k, l,l,l,-l,-l)";
  return op;
}

Outcome c7() {
  Outcome o;
  size_t n = 0;
  for (int64_t v = -3; v <= 3; ++v) {
    BuilderSpec s;
    s.values = {v};
    verify_into(o, n, s, {-1, 3}, 4);
  }
  for (auto sk : {SignKind::Plus, SignKind::Minus, SignKind::PlusMinus}) {
    BuilderSpec s;
    s.kind = BuilderKind::Sign;
    s.sign = sk;
    verify_into(o, n, s, {0, 12}, 6);
    for (int64_t k = -2; k <= 2; ++k) {
      s.threshold = k;
      verify_into(o, n, s, {0, 12}, 6);
    }
  }
  {
    BuilderSpec s;
    s.kind = BuilderKind::Duplicate;
    s.k = 0;
    s.operand = operand_singletons_range(-3, 3);
    verify_into(o, n, s, {-1, 4}, 4);
  }
  for (bool all : {false, true}) {
    BuilderSpec s;
    s.kind = BuilderKind::OppositePairs;
    s.all_integers = all;
    verify_into(o, n, s, {0, 19}, 4);
  }
  std::vector<std::vector<int64_t>> pq;
  for (int64_t p = 1; p <= 6; ++p)
    for (int64_t q = 1; q <= 6; ++q) pq.push_back({p, q});
  for (auto mode : {ArithMode::Diff, ArithMode::Sum}) {
    BuilderSpec s;
    s.kind = BuilderKind::ArithTriples;
    s.mode = mode;
    s.operand = operand_constants(pq);
    verify_into(o, n, s, {0, 55}, mode == ArithMode::Diff ? 6 : 12);
  }
  {
    BuilderSpec s;
    s.kind = BuilderKind::ReplaceCoord;
    s.operand = zinf_intermediate();
    s.i = 22;
    s.j = 27;
    s.k = 32;
    verify_into(o, n, s, {0, 40}, 3);
  }
  o.detail = std::to_string(n) + " builder contracts against the oracle";
  return o;
}

Outcome c8() {
  Outcome o;
  SeqTemplate t = zinf_template();
  Permutation alpha = parse_perm(kAlpha);
  SynthResult syn = synth_from_grouped_template(apply_perm(alpha, t), alpha);
  Window W = syn.window_for(2);
  size_t acc = 0, rej = 0, muts = 0;
  for (int64_t k = 1; k <= 2; ++k)
    for (int64_t l = 1; l <= 2; ++l) {
      Seq f = t.instantiate({{"k", k}, {"l", l}});
      bool in = member(syn.expr, f, W).member;
      acc += in;
      o.check(in, "f_{" + std::to_string(k) + "," + std::to_string(l) + "} rejected");
      auto mut = family_mutants(t, f, 20, static_cast<uint64_t>(100 * k + l));
      o.check(mut.size() == 20, "only " + std::to_string(mut.size()) + " mutants");
      for (const auto& g : mut) {
        ++muts;
        bool gin = member(syn.expr, g, W).member;
        rej += !gin;
        o.check(!gin, "mutant " + g.str() + " accepted");
      }
    }
  o.detail = "window " + W.str() + ", " + std::to_string(acc) + "/4 accepted, " + std::to_string(rej) + "/" +
             std::to_string(muts) + " mutants rejected";
  return o;
}

Outcome c9() {
  Outcome o;
  // Reference displays known to disagree with the freely reduced encoding.
  const std::set<std::pair<std::string, std::string>> documented = {{"pruefer", "relator 2"},
                                                                    {"metabelian", "relator 1"}};
  struct Run {
    std::string name;
    DemoOptions opt;
  };
  std::vector<Run> runs(4);
  runs[0].name = "q";
  runs[1].name = "pruefer";
  runs[1].opt.params = parse_param_ranges("p=2..3");
  runs[2].name = "metabelian";
  runs[2].opt.params = parse_param_ranges("k=1..2,l=1..2,u=1..2,v=1..2");
  runs[2].opt.instance_limit = 2;  // one member() call costs tens of seconds here
  runs[2].opt.mutations = 1;
  runs[3].name = "burnside";
  runs[3].opt.params = parse_param_ranges("n=2..3");
  for (size_t i = 0; i < runs.size(); ++i)
    if (runs[i].name != "metabelian") runs[i].opt.mutations = 2;

  size_t families = 0, matched = 0, known = 0;
  for (const auto& r : runs) {
    DemoReport rep = run_demo(r.name, r.opt);
    o.check(rep.ok, r.name + ": demo verification failed");
    for (const auto& fam : rep.families) {
      ++families;
      std::string id = r.name + " " + fam.label;
      size_t total = 0;
      for (const auto& [f, m] : fam.runs) total += static_cast<size_t>(m);
      o.check(total == fam.tmpl.coords.size(), id + ": runs sum to " + std::to_string(total));
      for (const auto& f : fam.failures) o.fail(id + ": " + f);
      if (r.name == "burnside") {
        bool flagged = false;
        for (const auto& f : fam.flags) flagged |= f.find("12n-11") != std::string::npos;
        o.check(flagged, id + ": length discrepancy not flagged");
        ++known;
        o.lines.push_back("FLAGGED " + id + ": reference display and length formula disagree with the encoder");
        continue;
      }
      if (!fam.display) continue;
      if (fam.display_match) {
        ++matched;
        continue;
      }
      bool doc = documented.count({r.name, fam.label.substr(0, fam.label.find(" ("))}) > 0;
      std::string flag = fam.flags.empty() ? "" : fam.flags.front();
      if (doc) {
        ++known;
        o.lines.push_back("FAIL " + id + " display [documented reference-display discrepancy, not counted]: " + flag);
      } else {
        o.fail(id + ": grouped template does not match the reference display: " + flag);
      }
    }
  }
  o.detail = std::to_string(families) + " families, " + std::to_string(matched) + " displays match, " +
             std::to_string(known) + " documented discrepancies";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "Z-infinity golden coordinates and grouping", 1, c1},
      {2, "conjugator word golden for (5,2,-1)", 1, c2},
      {3, "codec roundtrip", 5, c3},
      {4, "lowering equivalence", 120, c4},
      {5, "symbolic and enumerative evaluators agree", 120, c5},
      {6, "reflection convention", 10, c6},
      {7, "builder contracts", 600, c7},
      {8, "end-to-end Z-infinity membership", 600, c8},
      {9, "demo suite", 300, c9},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget) + " s");
    failed += !o.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << t << "; "
              << o.detail << ")\n";
    for (const auto& l : o.lines) std::cout << "    " << l << "\n";
    std::cout.flush();
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (all.size() - failed) << "/" << all.size() << "\n";
  return failed ? 1 : 0;
}
