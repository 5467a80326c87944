// Offline evaluation: ranking and error metrics, deterministic k-fold
// cross-validation over the algorithm matrix, and paired significance tests.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sensorec/domain.hpp"
#include "sensorec/predictor.hpp"

namespace sensorec {

// A rating counts as a hit when it reaches the threshold.
bool relevance(double rating, int threshold);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision over the (possibly shorter than n) list, recall over all
// relevant test items. Recall is vacuously 1 when nothing is relevant;
// F1 is 0 when precision + recall is 0.
PRF precision_recall_f1(const RankedList& ranked,
                        const std::unordered_set<ItemId>& relevant, int n);

// Mean of precision-at-k over relevant ranks within the top n, normalized
// by min(n, #relevant); 0 when nothing is relevant or n <= 0.
double average_precision(const RankedList& ranked,
                         const std::unordered_set<ItemId>& relevant, int n);

// 1 / rank of the first relevant entry within the top n, 0 on a miss.
double reciprocal_rank(const RankedList& ranked,
                       const std::unordered_set<ItemId>& relevant, int n);

struct ErrorStats {
  double mae = 0.0;
  double rmse = 0.0;
};

// Micro-averaged over all (prediction, truth) pairs; empty input rejected.
ErrorStats mae_rmse(std::span<const std::pair<double, double>> pred_truth);

// Fraction of evaluated users who received a non-empty list; 0 when nobody
// was evaluated.
double user_coverage(std::size_t users_served, std::size_t users_evaluated);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  bool degenerate = false;  // zero-variance differences
};

// Two-sided paired Student t-test. Zero-variance differences degenerate to
// p = 1 when the means agree and p = 0 otherwise.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Deterministic per-user partition of rated items into disjoint folds.
// Users with fewer rated items than folds are excluded and listed.
struct FoldPlan {
  struct UserFolds {
    std::vector<ItemId> items;   // the user's rated items, sorted
    std::vector<int> fold_of;    // fold index per item, same order
  };

  int fold_count = 5;
  std::uint64_t seed = 0;
  std::map<UserId, UserFolds> users;
  std::vector<std::pair<UserId, std::size_t>> excluded;  // id, rating count

  std::vector<ItemId> test_items(const UserId& user, int fold) const;
  std::vector<ItemId> training_items(const UserId& user, int fold) const;
};

FoldPlan make_fold_plan(const Dataset& dataset, int folds, std::uint64_t seed);

struct EvaluationOptions {
  int folds = 5;
  int top_n = 5;
  int relevance_threshold = 4;
  AlphaObjective alpha_objective = AlphaObjective::MAP;
  double alpha_step = 0.01;
  std::uint64_t seed = 0;
  std::string dataset_label;  // echoed into the report header
};

struct MetricRow {
  std::string algorithm;
  Family family = Family::Ind;
  std::optional<Measure> measure;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double map = 0.0;
  double mrr = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double coverage = 0.0;
};

struct FoldMetricRow {
  std::string algorithm;
  int fold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double map = 0.0;
  double mrr = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double coverage = 0.0;
  std::size_t test_pairs = 0;
  std::uint64_t test_pair_hash = 0;  // hash of the fold's (user, item) test set
};

struct SignificanceEntry {
  std::string metric;
  std::string best_overall;        // best algorithm across both categories
  std::string best_other_category; // best algorithm of the opposite category
  double t = 0.0;
  double p = 1.0;
  std::string stars;  // "**" p<0.01, "*" p<0.05, "" otherwise
};

struct EvaluationReport {
  std::vector<std::pair<std::string, std::string>> config;  // resolved options
  std::size_t evaluated_users = 0;
  std::vector<MetricRow> rows;        // sorted by MAP descending, then name
  std::vector<FoldMetricRow> fold_rows;
  std::vector<SignificanceEntry> significance;
  std::vector<std::pair<UserId, std::size_t>> excluded_users;
};

// Runs every configuration against the shared fold plan: per fold, Ind fits
// alpha on the training ratings, every algorithm ranks the same test items,
// per-user metrics are macro-averaged over users then folds while MAE/RMSE
// are micro-averaged over all test pairs. Deterministic for a fixed
// (dataset, plan, options). Throws when no user is evaluable.
EvaluationReport cross_validate(const Dataset& dataset,
                                const std::vector<AlgorithmConfig>& configs,
                                const FoldPlan& plan,
                                const EvaluationOptions& options);

}  // namespace sensorec
