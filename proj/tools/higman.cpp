#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "higman/demos.hpp"
#include "higman/embed2.hpp"
#include "higman/heval.hpp"
#include "higman/hmachine.hpp"
#include "higman/seqcodec.hpp"
#include "higman/synth.hpp"

using namespace higman;

namespace {

// Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or input error.
constexpr int kFail = 1;
constexpr int kError = 2;

struct Common {
  std::string window = "";
  int64_t mag = 4;
  std::string mode = "sym";
  std::string params;
  std::string variant;
  std::string out;
  size_t pattern_cap = 1000000;
  size_t enum_budget = 10000000;
  int64_t witness_slack = 0;

  EvalOptions eval() const {
    EvalOptions o;
    o.pattern_cap = pattern_cap;
    o.enum_budget = enum_budget;
    o.window.witness_slack = witness_slack;
    return o;
  }
  Window win() const {
    if (window.empty()) throw std::invalid_argument("--window lo:hi is required");
    return parse_window(window);
  }
  std::string header() const {
    std::ostringstream os;
    os << "# window=" << (window.empty() ? "-" : window) << " mag=" << mag << " mode=" << mode
       << " params=" << (params.empty() ? "-" : params) << " variant=" << (variant.empty() ? "-" : variant)
       << " pattern_cap=" << pattern_cap << " enum_budget=" << enum_budget << " witness_slack=" << witness_slack
       << "\n";
    return os.str();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// A preset by name, or an ad hoc one built from a presentation file. Parameters
// declared with a finite value set are instantiated before encoding.
Preset load_source(const std::string& preset_name, const std::string& file, const Common& c) {
  Preset p;
  if (!preset_name.empty()) {
    p = preset(preset_name);
  } else {
    if (file.empty()) throw std::invalid_argument("give a presentation file or --preset");
    p.name = file;
    p.presentation = read_file(file);
    p.variant = EmbeddingVariant::General;
    p.display = [](const std::map<std::string, int64_t>&) { return std::vector<std::optional<RunList>>{}; };
    for (const auto& r : parse_presentation(p.presentation).relators)
      for (const auto& d : r.params)
        if (d.values && std::find(p.fixed.begin(), p.fixed.end(), d.name) == p.fixed.end()) {
          p.fixed.push_back(d.name);
          p.ranges[d.name] = *d.values;
        }
  }
  if (!c.variant.empty()) p.variant = parse_variant(c.variant);
  for (const auto& [k, v] : parse_param_ranges(c.params)) p.ranges[k] = v;
  return p;
}

std::string fixed_label(const std::map<std::string, int64_t>& fix) {
  std::string s;
  for (const auto& [k, v] : fix) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
  return s;
}

// Every assignment of the template's own parameters drawn from `ranges`.
std::vector<std::map<std::string, int64_t>> instances(const SeqTemplate& t, const ParamRanges& ranges) {
  std::vector<std::map<std::string, int64_t>> acc{{}};
  for (const auto& d : t.params) {
    auto it = ranges.find(d.name);
    if (it == ranges.end()) return {};
    std::vector<std::map<std::string, int64_t>> next;
    for (const auto& a : acc)
      for (int64_t v : it->second)
        if (d.admits(v)) {
          auto b = a;
          b[d.name] = v;
          next.push_back(b);
        }
    acc = std::move(next);
  }
  return acc;
}

void emit(const Common& c, const std::string& text) {
  std::cout << text;
  if (!c.out.empty()) write_file(c.out, text);
}

int cmd_embed(const Common& c, const std::string& preset_name, const std::string& file) {
  Preset p = load_source(preset_name, file, c);
  Presentation pr = parse_presentation(p.presentation);
  std::ostringstream os;
  os << c.header() << "[presentation]\n" << pr.str() << "\n";
  os << "[two-generator presentation, " << variant_name(p.variant) << " variant]\n";
  os << embed_presentation(pr, p.variant).str();
  emit(c, os.str());
  return 0;
}

int cmd_encode(const Common& c, const std::string& preset_name, const std::string& file, const std::string& word) {
  std::ostringstream os;
  os << c.header();
  if (!word.empty()) {
    Word w = parse_word(word);
    Seq f = encode_word(w);
    os << "word: " << w.str() << "\ncode: " << f.str() << "\n";
    os << "roundtrip: " << (decode_seq(f) == w ? "ok" : "MISMATCH") << "\n";
    emit(c, os.str());
    return decode_seq(f) == w ? 0 : kFail;
  }
  Preset p = load_source(preset_name, file, c);
  for (const auto& fam : preset_families(p, p.ranges)) {
    os << "[" << fam.label << "]\n";
    os << "length: " << fam.tmpl.coords.size() << "\n";
    os << "template: " << fam.tmpl.str() << "\n";
    for (const auto& inst : instances(fam.tmpl, p.ranges))
      os << "  " << (inst.empty() ? "-" : fixed_label(inst)) << " " << fam.tmpl.instantiate(inst).str() << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_group(const Common& c, const std::string& preset_name, const std::string& file) {
  Preset p = load_source(preset_name, file, c);
  std::ostringstream os;
  os << c.header();
  bool ok = true;
  for (const auto& fam : preset_families(p, p.ranges)) {
    os << "[" << fam.label << "]\n";
    os << "grouping permutation: " << fam.grouping.alpha.str() << "\n";
    os << "grouped: " << fam.grouping.grouped.grouped_str() << "\n";
    bool back = apply_perm(fam.grouping.alpha.inverse(), fam.grouping.grouped) == fam.tmpl;
    os << "alpha^-1 grouped = template: " << (back ? "yes" : "NO") << "\n";
    ok = ok && back;
  }
  emit(c, os.str());
  return ok ? 0 : kFail;
}

int cmd_synth(const Common& c, const std::string& preset_name, const std::string& file) {
  Preset p = load_source(preset_name, file, c);
  auto fams = preset_families(p, p.ranges);
  std::ostringstream os;
  os << c.header();
  for (size_t i = 0; i < fams.size(); ++i) {
    const auto& fam = fams[i];
    auto syn = synth_from_grouped_template(fam.grouping.grouped, fam.grouping.alpha);
    os << "[synthesis " << fam.label << "]\n";
    os << "grouped: " << fam.grouping.grouped.grouped_str() << "\n";
    os << syn.log();
    os << "expression: " << expr_dag_size(syn.expr) << " distinct nodes\n";
    if (!c.out.empty()) {
      std::string path = fams.size() == 1 ? c.out : c.out + "." + std::to_string(i + 1);
      write_file(path, print_expr(syn.expr) + "\n");
      os << "written: " << path << "\n";
    }
    os << "\n";
  }
  std::cout << os.str();
  return 0;
}

int cmd_lower(const Common& c, const std::string& file) {
  ExprPtr e = parse_expr(read_file(file));
  ExprPtr l = lower(e);
  std::string text = print_expr(l) + "\n";
  if (!c.out.empty()) {
    write_file(c.out, text);
    std::cout << "nodes: " << expr_dag_size(e) << " -> " << expr_dag_size(l) << "\nwritten: " << c.out << "\n";
  } else {
    std::cout << text;
  }
  return 0;
}

int cmd_eval(const Common& c, const std::string& file) {
  ExprPtr e = parse_expr(read_file(file));
  Window W = c.win();
  std::ostringstream os;
  os << c.header();
  SeqSet members;
  if (c.mode == "sym") {
    PatternSet ps = eval_symbolic(e, W, c.eval());
    os << "[patterns]\n" << ps.str();
    members = expand(ps, c.mag, c.eval());
    os << "patterns=" << ps.patterns.size() << "\n";
  } else if (c.mode == "enum") {
    members = eval_enum(e, W, c.mag, c.eval());
  } else {
    throw std::invalid_argument("--mode must be sym or enum");
  }
  os << "[members |f| <= " << c.mag << "]\n";
  for (const auto& f : members) os << f.str() << "\n";
  os << "members=" << members.size() << "\n";
  emit(c, os.str());
  return 0;
}

int cmd_member(const Common& c, const std::string& file, const std::string& seq, size_t trace) {
  ExprPtr e = parse_expr(read_file(file));
  Seq f = parse_seq(seq);
  auto r = member(e, f, c.win(), c.eval(), trace);
  std::ostringstream os;
  os << c.header();
  for (const auto& l : r.trace) os << l << "\n";
  os << "sequence=" << f.str() << "\nmember=" << (r.member ? "yes" : "no") << "\n";
  emit(c, os.str());
  return r.member ? 0 : kFail;
}

int cmd_verify(const Common& c, const std::string& spec) {
  if (c.mode != "sym" && c.mode != "enum") throw std::invalid_argument("--mode must be sym or enum");
  auto r = verify_builder(parse_builder_spec(spec), c.win(), c.mag, c.mode == "sym", c.eval());
  emit(c, c.header() + r.str());
  return r.ok() ? 0 : kFail;
}

int cmd_demo(const Common& c, const std::string& name, int mutations, size_t limit, bool no_member) {
  DemoOptions o;
  o.params = parse_param_ranges(c.params);
  if (!c.variant.empty()) o.variant = parse_variant(c.variant);
  o.mutations = mutations;
  o.instance_limit = limit;
  o.membership = !no_member;
  o.eval = c.eval();
  auto rep = run_demo(name, o);
  std::cout << c.header() << rep.text;
  if (!c.out.empty()) write_file(c.out, rep.summary_text());
  return rep.ok ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higman embedding toolkit: presentations, sequence codes and set expressions"};
  app.require_subcommand(1);
  Common c;
  auto shared = [&](CLI::App* s, bool window) {
    if (window) {
      s->add_option("--window", c.window, "evaluation window lo:hi");
      s->add_option("--mag", c.mag, "magnitude bound M for listed members")->capture_default_str();
      s->add_option("--mode", c.mode, "sym or enum")->capture_default_str();
      s->add_option("--pattern-cap", c.pattern_cap, "patterns per node")->capture_default_str();
      s->add_option("--enum-budget", c.enum_budget, "candidates in the enumerative evaluator")->capture_default_str();
      s->add_option("--witness-slack", c.witness_slack, "extra window room for liberated witnesses")
          ->capture_default_str();
    }
    s->add_option("--out", c.out, "also write the main output to this file");
  };
  auto source = [&](CLI::App* s, std::string& preset_name, std::string& file) {
    s->add_option("file", file, "presentation file");
    s->add_option("--preset", preset_name, "built-in presentation: zinfty, metabelian, q, pruefer, burnside");
    s->add_option("--params", c.params, "parameter ranges, e.g. k=1..3,l=2");
    s->add_option("--variant", c.variant, "embedding variant: general or short");
  };

  std::string preset_name, file, word, seq, spec, demo;
  size_t trace = 0, limit = 0;
  int mutations = 5;
  bool no_member = false;

  auto* embed = app.add_subcommand("embed", "embed into a two-generator presentation");
  source(embed, preset_name, file);
  shared(embed, false);
  auto* encode = app.add_subcommand("encode", "encode relators as integer sequence templates");
  source(encode, preset_name, file);
  encode->add_option("--word", word, "encode a single {b,c} word instead");
  shared(encode, false);
  auto* group = app.add_subcommand("group", "find grouping permutations");
  source(group, preset_name, file);
  shared(group, false);
  auto* synth = app.add_subcommand("synth", "synthesize set expressions with a step log");
  source(synth, preset_name, file);
  shared(synth, false);
  auto* lowr = app.add_subcommand("lower", "rewrite auxiliary operations into core ones");
  lowr->add_option("file", file, "expression file")->required();
  shared(lowr, false);
  auto* eval = app.add_subcommand("eval", "evaluate an expression over a window");
  eval->add_option("file", file, "expression file")->required();
  shared(eval, true);
  auto* mem = app.add_subcommand("member", "decide membership of one sequence");
  mem->add_option("file", file, "expression file")->required();
  mem->add_option("seq", seq, "sequence such as (3,1,-1) or (5)@1")->required();
  mem->add_option("--trace", trace, "maximum trace lines")->capture_default_str();
  shared(mem, true);
  auto* ver = app.add_subcommand("verify", "check a builder against its oracle");
  ver->add_option("--spec", spec, "builder, e.g. triples:diff,operand=pairs(1..6)")->required();
  shared(ver, true);
  auto* dem = app.add_subcommand("demo", "run an end-to-end demo");
  dem->add_option("name", demo, "zinfty, metabelian, q, pruefer or burnside")->required();
  dem->add_option("--params", c.params, "parameter ranges, e.g. k=1..2,l=1..2");
  dem->add_option("--variant", c.variant, "embedding variant: general or short");
  dem->add_option("--mutations", mutations, "mutants checked per instance")->capture_default_str();
  dem->add_option("--instances", limit, "instances checked per family, 0 for all")->capture_default_str();
  dem->add_flag("--no-membership", no_member, "skip membership checks");
  dem->add_option("--out", c.out, "write the key=value summary to this file");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*embed) return cmd_embed(c, preset_name, file);
    if (*encode) return cmd_encode(c, preset_name, file, word);
    if (*group) return cmd_group(c, preset_name, file);
    if (*synth) return cmd_synth(c, preset_name, file);
    if (*lowr) return cmd_lower(c, file);
    if (*eval) return cmd_eval(c, file);
    if (*mem) return cmd_member(c, file, seq, trace);
    if (*ver) return cmd_verify(c, spec);
    if (*dem) return cmd_demo(c, demo, mutations, limit, no_member);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
