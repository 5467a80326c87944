#include "sensorec/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "sensorec/aggregation.hpp"
#include "sensorec/random.hpp"

namespace sensorec {

bool relevance(double rating, int threshold) {
  return rating >= static_cast<double>(threshold);
}

PRF precision_recall_f1(const RankedList& ranked,
                        const std::unordered_set<ItemId>& relevant, int n) {
  const std::size_t depth = std::min(ranked.size(), static_cast<std::size_t>(n));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (relevant.count(ranked[k].item) != 0) ++hits;
  }
  PRF out;
  out.precision = depth == 0 ? 0.0
                             : static_cast<double>(hits) / static_cast<double>(depth);
  out.recall = relevant.empty()
                   ? 1.0
                   : static_cast<double>(hits) / static_cast<double>(relevant.size());
  const double denom = out.precision + out.recall;
  out.f1 = denom == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / denom;
  return out;
}

double average_precision(const RankedList& ranked,
                         const std::unordered_set<ItemId>& relevant, int n) {
  if (relevant.empty() || n <= 0) return 0.0;
  const std::size_t depth = std::min(ranked.size(), static_cast<std::size_t>(n));
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (relevant.count(ranked[k].item) != 0) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  const std::size_t norm =
      std::min(static_cast<std::size_t>(n), relevant.size());
  return sum / static_cast<double>(norm);
}

double reciprocal_rank(const RankedList& ranked,
                       const std::unordered_set<ItemId>& relevant, int n) {
  const std::size_t depth = std::min(ranked.size(), static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < depth; ++k) {
    if (relevant.count(ranked[k].item) != 0) {
      return 1.0 / static_cast<double>(k + 1);
    }
  }
  return 0.0;
}

ErrorStats mae_rmse(std::span<const std::pair<double, double>> pred_truth) {
  if (pred_truth.empty()) {
    throw std::invalid_argument("mae_rmse: empty test set");
  }
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (const auto& [predicted, truth] : pred_truth) {
    const double err = predicted - truth;
    abs_sum += std::abs(err);
    sq_sum += err * err;
  }
  const double count = static_cast<double>(pred_truth.size());
  return {abs_sum / count, std::sqrt(sq_sum / count)};
}

double user_coverage(std::size_t users_served, std::size_t users_evaluated) {
  if (users_evaluated == 0) return 0.0;
  return static_cast<double>(users_served) / static_cast<double>(users_evaluated);
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_t_test: sample counts differ");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("paired_t_test: need at least 2 paired samples");
  }
  const std::size_t n = a.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) /
                      static_cast<double>(n);
  double sq_dev = 0.0;
  for (const double d : diff) sq_dev += (d - mean) * (d - mean);
  const double variance = sq_dev / static_cast<double>(n - 1);

  if (variance == 0.0) {
    // All paired differences identical: no spread to test against.
    TTestResult out;
    out.degenerate = true;
    if (mean == 0.0) {
      out.t = 0.0;
      out.p = 1.0;
    } else {
      out.t = mean > 0.0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
      out.p = 0.0;
    }
    return out;
  }

  TTestResult out;
  out.t = mean / std::sqrt(variance / static_cast<double>(n));
  const boost::math::students_t_distribution<double> dist(
      static_cast<double>(n - 1));
  out.p = 2.0 * boost::math::cdf(dist, -std::abs(out.t));
  return out;
}

std::vector<ItemId> FoldPlan::test_items(const UserId& user, int fold) const {
  const auto it = users.find(user);
  if (it == users.end()) {
    throw std::invalid_argument("fold plan has no user \"" + user + "\"");
  }
  std::vector<ItemId> out;
  for (std::size_t i = 0; i < it->second.items.size(); ++i) {
    if (it->second.fold_of[i] == fold) out.push_back(it->second.items[i]);
  }
  return out;
}

std::vector<ItemId> FoldPlan::training_items(const UserId& user, int fold) const {
  const auto it = users.find(user);
  if (it == users.end()) {
    throw std::invalid_argument("fold plan has no user \"" + user + "\"");
  }
  std::vector<ItemId> out;
  for (std::size_t i = 0; i < it->second.items.size(); ++i) {
    if (it->second.fold_of[i] != fold) out.push_back(it->second.items[i]);
  }
  return out;
}

FoldPlan make_fold_plan(const Dataset& dataset, int folds, std::uint64_t seed) {
  if (folds < 2) {
    throw std::invalid_argument("fold count must be at least 2");
  }
  FoldPlan plan;
  plan.fold_count = folds;
  plan.seed = seed;
  for (const UserProfile& user : dataset.users) {
    if (user.ratings.size() < static_cast<std::size_t>(folds)) {
      plan.excluded.emplace_back(user.id, user.ratings.size());
      continue;
    }
    FoldPlan::UserFolds uf;
    uf.items.reserve(user.ratings.size());
    for (const auto& [item_id, rating] : user.ratings) uf.items.push_back(item_id);

    // Shuffle a permutation of the sorted items, then deal folds round-robin,
    // so every fold gets within one item of every other.
    std::vector<std::size_t> perm(uf.items.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng::Engine engine(rng::mix(seed, user.id));
    rng::shuffle(perm, engine);

    uf.fold_of.resize(uf.items.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      uf.fold_of[perm[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
    plan.users.emplace(user.id, std::move(uf));
  }
  std::sort(plan.excluded.begin(), plan.excluded.end());
  return plan;
}

namespace {

constexpr std::array<Measure, 4> kMeasures = {Measure::Min, Measure::Ave,
                                              Measure::Cos, Measure::RMSD};

// Everything rating prediction needs about one (user, item) pair, computed
// once so each of the 13 configurations scores from the same numbers.
struct PairScores {
  ItemId item;
  double truth = 0.0;
  double pref = 0.0;
  std::array<double, 4> comp{};  // indexed by Measure order above
  std::array<double, 4> mc{};
};

struct UserCache {
  const UserProfile* user = nullptr;
  std::vector<PairScores> pairs;  // aligned with FoldPlan item order
};

std::uint64_t fnv1a_append(std::uint64_t hash, std::string_view text) {
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

struct MacroAccumulator {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double ap = 0.0;
  double rr = 0.0;
  std::size_t users = 0;
};

double comp_for(const PairScores& pair, const AlgorithmConfig& config) {
  if (config.family == Family::PrefOnly) return 0.0;
  if (!config.measure) {
    throw std::invalid_argument(std::string(family_name(config.family)) +
                                " requires a measure");
  }
  const std::size_t m = static_cast<std::size_t>(*config.measure);
  return config.family == Family::MC ? pair.mc[m] : pair.comp[m];
}

bool higher_is_better(std::string_view metric) {
  return metric != "mae" && metric != "rmse";
}

double metric_value(const MetricRow& row, std::string_view metric) {
  if (metric == "precision") return row.precision;
  if (metric == "recall") return row.recall;
  if (metric == "f1") return row.f1;
  if (metric == "map") return row.map;
  if (metric == "mrr") return row.mrr;
  if (metric == "mae") return row.mae;
  if (metric == "rmse") return row.rmse;
  throw std::logic_error("unknown metric");
}

double metric_value(const FoldMetricRow& row, std::string_view metric) {
  if (metric == "precision") return row.precision;
  if (metric == "recall") return row.recall;
  if (metric == "f1") return row.f1;
  if (metric == "map") return row.map;
  if (metric == "mrr") return row.mrr;
  if (metric == "mae") return row.mae;
  if (metric == "rmse") return row.rmse;
  throw std::logic_error("unknown metric");
}

}  // namespace

EvaluationReport cross_validate(const Dataset& dataset,
                                const std::vector<AlgorithmConfig>& configs,
                                const FoldPlan& plan,
                                const EvaluationOptions& options) {
  if (configs.empty()) {
    throw std::invalid_argument("cross_validate: no configurations given");
  }
  if (plan.users.empty()) {
    throw std::runtime_error(
        "no evaluable users: every user needs at least " +
        std::to_string(plan.fold_count) + " ratings");
  }
  const int v_max = dataset.schema.v_max;

  // Score every rated (user, item) pair once, up front.
  std::vector<UserCache> caches;
  caches.reserve(plan.users.size());
  for (const auto& [user_id, folds] : plan.users) {
    const UserProfile* user = dataset.find_user(user_id);
    if (user == nullptr) {
      throw std::invalid_argument("fold plan references unknown user \"" +
                                  user_id + "\"");
    }
    UserCache cache;
    cache.user = user;
    cache.pairs.reserve(folds.items.size());
    for (const ItemId& item_id : folds.items) {
      const ItemProfile* item = dataset.find_item(item_id);
      if (item == nullptr) {
        throw std::invalid_argument("fold plan references unknown item \"" +
                                    item_id + "\"");
      }
      PairScores pair;
      pair.item = item_id;
      pair.truth = user->ratings.at(item_id);
      const auto pref_it = user->preferences.find(item->category);
      if (pref_it == user->preferences.end()) {
        throw std::invalid_argument("user " + user_id +
                                    " has no preference for category \"" +
                                    item->category + "\"");
      }
      pair.pref = static_cast<double>(pref_it->second);
      for (std::size_t m = 0; m < kMeasures.size(); ++m) {
        pair.comp[m] = item_compatibility(*user, *item, dataset.schema, kMeasures[m]);
        pair.mc[m] = mc_score(*user, *item, dataset.schema, kMeasures[m]);
      }
      cache.pairs.push_back(std::move(pair));
    }
    caches.push_back(std::move(cache));
  }

  EvaluationReport report;
  report.evaluated_users = plan.users.size();
  report.excluded_users = plan.excluded;

  for (const AlgorithmConfig& config : configs) {
    MetricRow row;
    row.algorithm = config.name();
    row.family = config.family;
    row.measure = config.measure;

    double fold_precision = 0.0, fold_recall = 0.0, fold_f1 = 0.0;
    double fold_map = 0.0, fold_mrr = 0.0, fold_coverage = 0.0;
    double abs_sum = 0.0, sq_sum = 0.0;
    std::size_t pair_count = 0;

    for (int fold = 0; fold < plan.fold_count; ++fold) {
      MacroAccumulator macro;
      double fold_abs = 0.0, fold_sq = 0.0;
      std::size_t fold_pairs = 0;
      std::size_t served = 0;
      std::uint64_t pair_hash = 0xcbf29ce484222325ULL;

      for (const UserCache& cache : caches) {
        const auto& folds = plan.users.at(cache.user->id);

        // Fit alpha on the training folds; fixed families skip the search.
        double alpha = 0.0;
        if (config.family == Family::Ind) {
          std::vector<TrainingExample> training;
          training.reserve(cache.pairs.size());
          const std::size_t m = static_cast<std::size_t>(*config.measure);
          for (std::size_t i = 0; i < cache.pairs.size(); ++i) {
            if (folds.fold_of[i] == fold) continue;
            training.push_back({cache.pairs[i].item, cache.pairs[i].comp[m],
                                cache.pairs[i].pref, cache.pairs[i].truth});
          }
          alpha = fit_alpha_from_examples(training, config,
                                          options.relevance_threshold, v_max);
        } else if (const auto fixed = fixed_alpha(config.family)) {
          alpha = *fixed;
        }

        // Score this fold's held-out items; they are the ranking candidates.
        std::vector<RankedEntry> scored;
        std::unordered_set<ItemId> relevant;
        for (std::size_t i = 0; i < cache.pairs.size(); ++i) {
          if (folds.fold_of[i] != fold) continue;
          const PairScores& pair = cache.pairs[i];
          const double predicted = predict_from_scores(
              config.family, comp_for(pair, config), pair.pref, alpha, v_max);
          scored.push_back({pair.item, predicted});
          if (relevance(pair.truth, options.relevance_threshold)) {
            relevant.insert(pair.item);
          }
          const double err = predicted - pair.truth;
          fold_abs += std::abs(err);
          fold_sq += err * err;
          ++fold_pairs;
          pair_hash = fnv1a_append(pair_hash, cache.user->id);
          pair_hash = fnv1a_append(pair_hash, "\x1f");
          pair_hash = fnv1a_append(pair_hash, pair.item);
          pair_hash = fnv1a_append(pair_hash, "\x1e");
        }

        const RankedList ranked = rank_scored(std::move(scored), options.top_n);
        if (!ranked.empty()) ++served;

        if (!relevant.empty()) {
          const PRF prf = precision_recall_f1(ranked, relevant, options.top_n);
          macro.precision += prf.precision;
          macro.recall += prf.recall;
          macro.f1 += prf.f1;
          macro.ap += average_precision(ranked, relevant, options.top_n);
          macro.rr += reciprocal_rank(ranked, relevant, options.top_n);
          ++macro.users;
        }
      }

      FoldMetricRow fold_row;
      fold_row.algorithm = row.algorithm;
      fold_row.fold = fold;
      if (macro.users > 0) {
        const double users = static_cast<double>(macro.users);
        fold_row.precision = macro.precision / users;
        fold_row.recall = macro.recall / users;
        fold_row.f1 = macro.f1 / users;
        fold_row.map = macro.ap / users;
        fold_row.mrr = macro.rr / users;
      }
      if (fold_pairs > 0) {
        fold_row.mae = fold_abs / static_cast<double>(fold_pairs);
        fold_row.rmse = std::sqrt(fold_sq / static_cast<double>(fold_pairs));
      }
      fold_row.coverage = user_coverage(served, caches.size());
      fold_row.test_pairs = fold_pairs;
      fold_row.test_pair_hash = pair_hash;
      report.fold_rows.push_back(fold_row);

      fold_precision += fold_row.precision;
      fold_recall += fold_row.recall;
      fold_f1 += fold_row.f1;
      fold_map += fold_row.map;
      fold_mrr += fold_row.mrr;
      fold_coverage += fold_row.coverage;
      abs_sum += fold_abs;
      sq_sum += fold_sq;
      pair_count += fold_pairs;
    }

    const double folds = static_cast<double>(plan.fold_count);
    row.precision = fold_precision / folds;
    row.recall = fold_recall / folds;
    row.f1 = fold_f1 / folds;
    row.map = fold_map / folds;
    row.mrr = fold_mrr / folds;
    row.coverage = fold_coverage / folds;
    if (pair_count > 0) {
      row.mae = abs_sum / static_cast<double>(pair_count);
      row.rmse = std::sqrt(sq_sum / static_cast<double>(pair_count));
    }
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const MetricRow& a, const MetricRow& b) {
              if (a.map != b.map) return a.map > b.map;
              return a.algorithm < b.algorithm;
            });

  // Significance: per metric, compare the best algorithm against the best of
  // the other category (Ind vs the non-individualized baselines), pairing the
  // two algorithms' per-fold samples.
  const char* metrics[] = {"precision", "recall", "f1", "map",
                           "mrr",       "mae",    "rmse"};
  const bool have_both_categories =
      std::any_of(report.rows.begin(), report.rows.end(),
                  [](const MetricRow& r) { return r.family == Family::Ind; }) &&
      std::any_of(report.rows.begin(), report.rows.end(),
                  [](const MetricRow& r) { return r.family != Family::Ind; });
  if (have_both_categories && plan.fold_count >= 2) {
    for (const char* metric : metrics) {
      const bool higher = higher_is_better(metric);
      const MetricRow* best = nullptr;
      const MetricRow* best_other = nullptr;
      for (const MetricRow& candidate : report.rows) {
        const double value = metric_value(candidate, metric);
        if (best == nullptr ||
            (higher ? value > metric_value(*best, metric)
                    : value < metric_value(*best, metric))) {
          best = &candidate;
        }
      }
      const bool best_is_ind = best->family == Family::Ind;
      for (const MetricRow& candidate : report.rows) {
        if ((candidate.family == Family::Ind) == best_is_ind) continue;
        const double value = metric_value(candidate, metric);
        if (best_other == nullptr ||
            (higher ? value > metric_value(*best_other, metric)
                    : value < metric_value(*best_other, metric))) {
          best_other = &candidate;
        }
      }

      std::vector<double> best_samples, other_samples;
      for (const FoldMetricRow& fold_row : report.fold_rows) {
        if (fold_row.algorithm == best->algorithm) {
          best_samples.push_back(metric_value(fold_row, metric));
        } else if (fold_row.algorithm == best_other->algorithm) {
          other_samples.push_back(metric_value(fold_row, metric));
        }
      }
      const TTestResult test = paired_t_test(best_samples, other_samples);

      SignificanceEntry entry;
      entry.metric = metric;
      entry.best_overall = best->algorithm;
      entry.best_other_category = best_other->algorithm;
      entry.t = test.t;
      entry.p = test.p;
      if (test.p < 0.01) {
        entry.stars = "**";
      } else if (test.p < 0.05) {
        entry.stars = "*";
      }
      report.significance.push_back(std::move(entry));
    }
  }

  if (!options.dataset_label.empty()) {
    report.config.emplace_back("dataset", options.dataset_label);
  }
  report.config.emplace_back("users", std::to_string(dataset.users.size()));
  report.config.emplace_back("items", std::to_string(dataset.items.size()));
  report.config.emplace_back("evaluated_users",
                             std::to_string(report.evaluated_users));
  report.config.emplace_back("excluded_users",
                             std::to_string(report.excluded_users.size()));
  report.config.emplace_back("algorithms", std::to_string(configs.size()));
  report.config.emplace_back("folds", std::to_string(plan.fold_count));
  report.config.emplace_back("top_n", std::to_string(options.top_n));
  report.config.emplace_back("relevance_threshold",
                             std::to_string(options.relevance_threshold));
  report.config.emplace_back(
      "alpha_objective", std::string(alpha_objective_name(options.alpha_objective)));
  report.config.emplace_back("alpha_step", format_double(options.alpha_step));
  report.config.emplace_back("seed", std::to_string(options.seed));
  return report;
}

}  // namespace sensorec
