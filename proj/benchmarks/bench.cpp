#include <benchmark/benchmark.h>

#include "higman/embed2.hpp"
#include "higman/hmachine.hpp"
#include "higman/synth.hpp"

using namespace higman;

namespace {

SeqTemplate zinf_template() {
  Presentation p = parse_presentation("gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n");
  return encode_template(embed_presentation(p, EmbeddingVariant::Short).relators[0]);
}

void BM_EncodeRelator(benchmark::State& st) {
  Presentation p = embed_presentation(parse_presentation("gen a[i] : i >= 1\nrel [a[k],a[l]] : k,l >= 1\n"),
                                      EmbeddingVariant::Short);
  Word w = p.relators[0].instantiate({{"k", 3}, {"l", 5}});
  for (auto _ : st) benchmark::DoNotOptimize(encode_word(w));
}
BENCHMARK(BM_EncodeRelator);

void BM_Grouping(benchmark::State& st) {
  SeqTemplate t = zinf_template();
  for (auto _ : st) benchmark::DoNotOptimize(find_grouping_perm(t));
}
BENCHMARK(BM_Grouping);

void BM_LowerSignSet(benchmark::State& st) {
  ExprPtr e = hm::other_than(1);
  for (auto _ : st) benchmark::DoNotOptimize(lower(e));
}
BENCHMARK(BM_LowerSignSet);

void BM_SymbolicOppositePairs(benchmark::State& st) {
  ExprPtr e = hm::opposite_pairs();
  Window W{0, static_cast<int64_t>(st.range(0)) - 1};
  for (auto _ : st) benchmark::DoNotOptimize(eval_symbolic(e, W));
}
BENCHMARK(BM_SymbolicOppositePairs)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EnumSignSet(benchmark::State& st) {
  ExprPtr e = hm::sign_plus();
  for (auto _ : st) benchmark::DoNotOptimize(eval_enum(e, {0, 5}, st.range(0)));
}
BENCHMARK(BM_EnumSignSet)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MemberZinfty(benchmark::State& st) {
  SeqTemplate t = zinf_template();
  Grouping g = find_grouping_perm(t);
  SynthResult r = synth_from_grouped_template(g.grouped, g.alpha);
  Seq f = t.instantiate({{"k", 1}, {"l", 2}});
  Window W = r.window_for(2);
  for (auto _ : st) benchmark::DoNotOptimize(member(r.expr, f, W).member);
}
BENCHMARK(BM_MemberZinfty)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
