// Microbenchmarks for the hot paths: per-pair scoring, the alpha grid
// search, ranking, and a small end-to-end cross-validation.
#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "sensorec/evaluation.hpp"
#include "sensorec/predictor.hpp"
#include "sensorec/synthetic.hpp"

namespace {

using namespace sensorec;

const Dataset& bench_dataset() {
  static const Dataset dataset = [] {
    SyntheticSpec spec;
    spec.user_count = 50;
    spec.item_count = 100;
    spec.seed = 99;
    return generate_synthetic(spec).first;
  }();
  return dataset;
}

void BM_PredictRating(benchmark::State& state) {
  const Dataset& dataset = bench_dataset();
  const AlgorithmConfig config{Family::Ind,
                               static_cast<Measure>(state.range(0))};
  const UserProfile& user = dataset.users.front();
  std::size_t i = 0;
  for (auto _ : state) {
    const ItemProfile& item = dataset.items[i++ % dataset.items.size()];
    benchmark::DoNotOptimize(
        predict_rating(user, item, dataset.schema, config, 0.5));
  }
}
BENCHMARK(BM_PredictRating)
    ->Arg(static_cast<int>(Measure::Min))
    ->Arg(static_cast<int>(Measure::Ave))
    ->Arg(static_cast<int>(Measure::Cos))
    ->Arg(static_cast<int>(Measure::RMSD));

void BM_FitAlpha(benchmark::State& state) {
  const Dataset& dataset = bench_dataset();
  const AlgorithmConfig config{Family::Ind, Measure::Ave, AlphaObjective::MAP,
                               1.0 / static_cast<double>(state.range(0))};
  const UserProfile& user = dataset.users.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_alpha(user, user.ratings, dataset, config));
  }
  state.SetLabel(std::to_string(user.ratings.size()) + " ratings");
}
BENCHMARK(BM_FitAlpha)->Arg(20)->Arg(100);

void BM_TopN(benchmark::State& state) {
  const Dataset& dataset = bench_dataset();
  const UserProfile& user = dataset.users.front();
  std::vector<const ItemProfile*> candidates;
  for (const ItemProfile& item : dataset.items) candidates.push_back(&item);
  const AlgorithmConfig config{Family::Ind, Measure::Ave};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        top_n(user, candidates, dataset.schema, config, 0.5, 5));
  }
}
BENCHMARK(BM_TopN);

void BM_CrossValidate(benchmark::State& state) {
  SyntheticSpec spec;
  spec.user_count = 25;
  spec.item_count = 40;
  spec.seed = 99;
  const Dataset dataset = generate_synthetic(spec).first;
  const std::vector<AlgorithmConfig> configs{
      {Family::Ind, Measure::Ave},
      {Family::MC, Measure::Ave},
      {Family::COnly, Measure::Ave},
      {Family::PrefOnly, std::nullopt},
  };
  EvaluationOptions options;
  options.seed = 99;
  const FoldPlan plan = make_fold_plan(dataset, options.folds, options.seed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_validate(dataset, configs, plan, options));
  }
}
BENCHMARK(BM_CrossValidate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
