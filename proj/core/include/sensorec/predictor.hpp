// Rating prediction, per-user alpha fitting and Top-N list generation for
// the full algorithm matrix (Ind, MC, C-only x {Min, Ave, Cos, RMSD}, and
// Pref-only).
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensorec/aggregation.hpp"
#include "sensorec/domain.hpp"

namespace sensorec {

enum class Family { Ind, MC, COnly, PrefOnly };

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view text);

enum class AlphaObjective { MAP, RMSE };

std::string_view alpha_objective_name(AlphaObjective objective);
std::optional<AlphaObjective> parse_alpha_objective(std::string_view text);

struct AlgorithmConfig {
  Family family = Family::Ind;
  std::optional<Measure> measure = Measure::Cos;  // absent iff PrefOnly
  AlphaObjective alpha_objective = AlphaObjective::MAP;
  double alpha_grid_step = 0.01;  // must divide 1 evenly

  // Display name matching the result tables: "Ind_Cos", "MC_Ave",
  // "C-only_Min", "Pref-only".
  std::string name() const;
};

// The 13 evaluated configurations: {Ind, MC, C-only} x {Min, Ave, Cos, RMSD}
// plus Pref-only.
std::vector<AlgorithmConfig> algorithm_matrix(
    AlphaObjective objective = AlphaObjective::MAP, double alpha_step = 0.01);

// Weight of the compatibility side fixed by the family, if any:
// C-only -> 1, Pref-only -> 0. Ind is fitted per user; MC has no alpha.
std::optional<double> fixed_alpha(Family family);

double clamp_rating(double value, int v_max);

// Final rating from precomputed scores. For Ind and C-only this is the
// weighted mean alpha*comp + (1-alpha)*pref; Pref-only returns pref and MC
// returns comp (already the fused score). Clamped to [1, v_max].
double predict_from_scores(Family family, double comp, double pref, double alpha,
                           int v_max);

// Predicted rating for one (user, item) pair under the given configuration.
// alpha is ignored for MC and Pref-only. Rejects items whose category the
// user declared no preference for.
double predict_rating(const UserProfile& user, const ItemProfile& item,
                      const FeatureSchema& schema, const AlgorithmConfig& config,
                      double alpha);

// One training observation, reduced to the three scores the weighted-mean
// model needs: compatibility, category preference and the ground truth.
struct TrainingExample {
  ItemId item;
  double comp = 0.0;
  double pref = 0.0;
  double truth = 0.0;
};

// Exhaustive grid search over alpha in {0, step, ..., 1}. Objective MAP
// maximizes average precision of the training items ranked by predicted
// rating (ties by lower RMSE, then smaller alpha); objective RMSE minimizes
// rating error (ties by smaller alpha).
double fit_alpha_from_examples(std::span<const TrainingExample> examples,
                               const AlgorithmConfig& config,
                               int relevance_threshold, int v_max);

// Same search, building the examples from profiles. training_ratings maps
// item id -> ground-truth rating and must be non-empty.
double fit_alpha(const UserProfile& user,
                 const std::map<ItemId, double>& training_ratings,
                 const Dataset& dataset, const AlgorithmConfig& config,
                 int relevance_threshold = 4);

struct RankedEntry {
  ItemId item;
  double score = 0.0;
};

// Non-increasing by score; ties broken by ascending item id.
using RankedList = std::vector<RankedEntry>;

// Ranks the candidates by predicted rating and keeps the best n. Candidates
// are expected to exclude the user's training items.
RankedList top_n(const UserProfile& user,
                 std::span<const ItemProfile* const> candidates,
                 const FeatureSchema& schema, const AlgorithmConfig& config,
                 double alpha, int n);

// Ranking over precomputed (item, score) pairs; same ordering contract.
RankedList rank_scored(std::vector<RankedEntry> scored, int n);

}  // namespace sensorec
