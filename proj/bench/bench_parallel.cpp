// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "uitext/eval.hpp"
#include "uitext/tuning.hpp"

namespace {

using namespace uitext;

const std::string kData = UITEXT_TEST_DATA;

std::vector<EvalCase> eval_suite(int copies) {
  const auto base = load_eval_cases(kData + "/eval/cases");
  std::vector<EvalCase> out;
  for (int i = 0; i < copies; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

std::vector<CorpusPage> corpus(int copies) {
  std::vector<CorpusPage> base;
  for (const char* dir : {"corpus", "tuning", "golden", "pages"}) {
    for (auto& p : load_corpus(kData + "/fixtures/" + dir)) base.push_back(std::move(p));
  }
  std::vector<CorpusPage> out;
  for (int i = 0; i < copies; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

void BM_RunEval(benchmark::State& state) {
  const auto cases = eval_suite(static_cast<int>(state.range(0)));
  BackendConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(run_eval(cases, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cases.size()));
}

void BM_RunEvalSerial(benchmark::State& state) {
  const auto cases = eval_suite(static_cast<int>(state.range(0)));
  BackendConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(run_eval_serial(cases, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cases.size()));
}

void BM_CollectPairs(benchmark::State& state) {
  const auto pages = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collect_pairs(pages));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pages.size()));
}

void BM_CollectPairsSerial(benchmark::State& state) {
  const auto pages = corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(collect_pairs_serial(pages));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pages.size()));
}

BENCHMARK(BM_RunEval)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunEvalSerial)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollectPairs)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollectPairsSerial)->Arg(1)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
