#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "concord/agreement.hpp"
#include "concord/guessing.hpp"
#include "concord/inference.hpp"

namespace {

concord::AgreementTable random_table(std::size_t k) {
  std::mt19937_64 gen(k);
  std::uniform_int_distribution<std::int64_t> cell(0, 500);
  std::vector<std::vector<std::int64_t>> counts(k, std::vector<std::int64_t>(k));
  for (auto& row : counts)
    for (auto& c : row) c = cell(gen) + 1;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < k; ++i) labels.push_back("L" + std::to_string(i));
  return concord::from_counts(counts, concord::CategoryScheme(labels));
}

void BM_Summarize(benchmark::State& state) {
  const auto table = random_table(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(concord::summarize(table));
  }
}
BENCHMARK(BM_Summarize)->Arg(3)->Arg(6)->Arg(16);

void BM_SimulateRun(benchmark::State& state) {
  const concord::GuessingModel model(0.8, {0.1, 0.5, 0.4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(concord::simulate_run(model, state.range(0), 1960));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRun)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_SignTest(benchmark::State& state) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> noise(0.05, 0.1);
  std::vector<double> diffs(static_cast<std::size_t>(state.range(0)));
  for (auto& d : diffs) d = noise(gen);
  for (auto _ : state) {
    benchmark::DoNotOptimize(concord::sign_test(diffs));
  }
}
BENCHMARK(BM_SignTest)->Arg(20)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
