#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "higman/embed2.hpp"
#include "higman/heval.hpp"
#include "higman/synth.hpp"

namespace higman {

using ParamRanges = std::map<std::string, std::vector<int64_t>>;

// "k=1..3,l=2,p=2..3" -> {k:{1,2,3}, l:{2}, p:{2,3}}. Throws std::invalid_argument.
ParamRanges parse_param_ranges(const std::string& text);

using RunList = std::vector<std::pair<Affine, int64_t>>;  // form, multiplicity

struct Preset {
  std::string name;
  std::string presentation;       // text accepted by parse_presentation
  EmbeddingVariant variant;
  std::vector<std::string> fixed;  // parameters instantiated before encoding (p, n)
  ParamRanges ranges;              // default test ranges, fixed ones included
  // Reference grouped display per relator family, for given fixed values.
  std::function<std::vector<std::optional<RunList>>(const std::map<std::string, int64_t>&)> display;
  // Reference grouping permutation per relator family, when one is known.
  std::vector<std::optional<Permutation>> reference_alpha;
};

std::vector<std::string> demo_names();
const Preset& preset(const std::string& name);  // throws std::invalid_argument on unknown names

struct PresetFamily {
  std::string label;
  std::map<std::string, int64_t> fixed;
  SeqTemplate tmpl;
  Grouping grouping;
  std::optional<RunList> display;
};
std::vector<PresetFamily> preset_families(const Preset& p, const ParamRanges& ranges);

struct DemoOptions {
  ParamRanges params;  // overrides the preset ranges per name
  std::optional<EmbeddingVariant> variant;
  int mutations = 5;   // single-coordinate mutants per instance
  bool membership = true;
  size_t instance_limit = 0;  // per family; 0 checks every instance
  EvalOptions eval;
};

struct FamilyReport {
  std::string label;
  SeqTemplate tmpl, grouped;
  Permutation alpha;
  RunList runs;  // multiset of grouped values, in grouped order
  std::optional<RunList> display;
  bool display_match = false;
  std::vector<std::string> flags;
  std::string synth_log;
  size_t dag_size = 0;
  size_t members_checked = 0, members_ok = 0;
  size_t mutants_checked = 0, mutants_rejected = 0;
  std::vector<std::string> failures;
};

struct DemoReport {
  std::string name;
  std::string text;  // full structured report, ends with the summary
  std::vector<FamilyReport> families;
  std::vector<std::pair<std::string, std::string>> summary;
  bool ok = false;  // every verification passed (display flags are not failures)
  std::string summary_text() const;
};

DemoReport run_demo(const std::string& name, const DemoOptions& opt = {});

// Multiset comparison of grouped runs, order ignored.
bool same_runs(const RunList& a, const RunList& b);
RunList value_runs(const SeqTemplate& grouped);

// Single-coordinate mutants of f that are not members of the family (checked by
// enumerating parameter values), chosen deterministically from `seed`.
std::vector<Seq> family_mutants(const SeqTemplate& t, const Seq& f, int count, uint64_t seed);

}  // namespace higman
