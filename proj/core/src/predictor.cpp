#include "sensorec/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "sensorec/evaluation.hpp"

namespace sensorec {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Ind: return "Ind";
    case Family::MC: return "MC";
    case Family::COnly: return "C-only";
    case Family::PrefOnly: return "Pref-only";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "ind" || text == "Ind") return Family::Ind;
  if (text == "mc" || text == "MC") return Family::MC;
  if (text == "c-only" || text == "conly" || text == "C-only") return Family::COnly;
  if (text == "pref-only" || text == "prefonly" || text == "Pref-only") {
    return Family::PrefOnly;
  }
  return std::nullopt;
}

std::string_view alpha_objective_name(AlphaObjective objective) {
  return objective == AlphaObjective::MAP ? "map" : "rmse";
}

std::optional<AlphaObjective> parse_alpha_objective(std::string_view text) {
  if (text == "map" || text == "MAP") return AlphaObjective::MAP;
  if (text == "rmse" || text == "RMSE") return AlphaObjective::RMSE;
  return std::nullopt;
}

std::string AlgorithmConfig::name() const {
  std::string out(family_name(family));
  if (family != Family::PrefOnly && measure) {
    out += "_";
    out += measure_name(*measure);
  }
  return out;
}

std::vector<AlgorithmConfig> algorithm_matrix(AlphaObjective objective,
                                              double alpha_step) {
  std::vector<AlgorithmConfig> configs;
  const Measure measures[] = {Measure::Min, Measure::Ave, Measure::Cos,
                              Measure::RMSD};
  for (const Family family : {Family::Ind, Family::MC, Family::COnly}) {
    for (const Measure measure : measures) {
      configs.push_back({family, measure, objective, alpha_step});
    }
  }
  configs.push_back({Family::PrefOnly, std::nullopt, objective, alpha_step});
  return configs;
}

std::optional<double> fixed_alpha(Family family) {
  switch (family) {
    case Family::COnly: return 1.0;
    case Family::PrefOnly: return 0.0;
    case Family::Ind:
    case Family::MC: return std::nullopt;
  }
  return std::nullopt;
}

double clamp_rating(double value, int v_max) {
  return std::clamp(value, 1.0, static_cast<double>(v_max));
}

double predict_from_scores(Family family, double comp, double pref, double alpha,
                           int v_max) {
  switch (family) {
    case Family::PrefOnly:
      return clamp_rating(pref, v_max);
    case Family::MC:
      return clamp_rating(comp, v_max);
    case Family::Ind:
    case Family::COnly:
      return clamp_rating(alpha * comp + (1.0 - alpha) * pref, v_max);
  }
  throw std::logic_error("unreachable family");
}

namespace {

double preference_for(const UserProfile& user, const ItemProfile& item) {
  const auto it = user.preferences.find(item.category);
  if (it == user.preferences.end()) {
    throw std::invalid_argument("user " + user.id + " has no preference for category \"" +
                                item.category + "\"");
  }
  return static_cast<double>(it->second);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha " + std::to_string(alpha) +
                                " outside [0, 1]");
  }
}

// Grid point count for the step; the step must divide 1 evenly.
int grid_divisions(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("alpha grid step must lie in (0, 1]");
  }
  const double divisions = 1.0 / step;
  const int k = static_cast<int>(std::lround(divisions));
  if (k < 1 || std::abs(divisions - k) > 1e-9) {
    throw std::invalid_argument("alpha grid step must divide 1 evenly");
  }
  return k;
}

}  // namespace

double predict_rating(const UserProfile& user, const ItemProfile& item,
                      const FeatureSchema& schema, const AlgorithmConfig& config,
                      double alpha) {
  check_alpha(alpha);
  const double pref = preference_for(user, item);
  double comp = 0.0;
  if (config.family == Family::MC) {
    if (!config.measure) throw std::invalid_argument("MC requires a measure");
    comp = mc_score(user, item, schema, *config.measure);
  } else if (config.family != Family::PrefOnly) {
    if (!config.measure) {
      throw std::invalid_argument(std::string(family_name(config.family)) +
                                  " requires a measure");
    }
    comp = item_compatibility(user, item, schema, *config.measure);
  }
  return predict_from_scores(config.family, comp, pref, alpha, schema.v_max);
}

double fit_alpha_from_examples(std::span<const TrainingExample> examples,
                               const AlgorithmConfig& config,
                               int relevance_threshold, int v_max) {
  if (examples.empty()) {
    throw std::invalid_argument("fit_alpha: empty training set");
  }
  const int divisions = grid_divisions(config.alpha_grid_step);

  std::unordered_set<ItemId> relevant;
  for (const auto& example : examples) {
    if (relevance(example.truth, relevance_threshold)) relevant.insert(example.item);
  }

  double best_alpha = 0.0;
  double best_primary = 0.0;
  double best_rmse = 0.0;
  bool have_best = false;

  std::vector<RankedEntry> scored(examples.size());
  for (int k = 0; k <= divisions; ++k) {
    const double alpha = static_cast<double>(k) / static_cast<double>(divisions);

    double sq_sum = 0.0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      const double predicted = predict_from_scores(Family::Ind, examples[i].comp,
                                                   examples[i].pref, alpha, v_max);
      const double err = predicted - examples[i].truth;
      sq_sum += err * err;
      scored[i] = {examples[i].item, predicted};
    }
    const double rmse = std::sqrt(sq_sum / static_cast<double>(examples.size()));

    double primary;  // higher is better
    if (config.alpha_objective == AlphaObjective::MAP) {
      const auto ranked = rank_scored(scored, static_cast<int>(examples.size()));
      primary = average_precision(ranked, relevant, static_cast<int>(examples.size()));
    } else {
      primary = -rmse;
    }

    // Ties: prefer lower RMSE, then the smaller alpha (which the ascending
    // scan yields for free).
    if (!have_best || primary > best_primary ||
        (primary == best_primary && rmse < best_rmse)) {
      have_best = true;
      best_primary = primary;
      best_rmse = rmse;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

double fit_alpha(const UserProfile& user,
                 const std::map<ItemId, double>& training_ratings,
                 const Dataset& dataset, const AlgorithmConfig& config,
                 int relevance_threshold) {
  if (training_ratings.empty()) {
    throw std::invalid_argument("fit_alpha: user " + user.id +
                                " has no training ratings");
  }
  if (!config.measure) {
    throw std::invalid_argument("fit_alpha requires a measure");
  }
  std::vector<TrainingExample> examples;
  examples.reserve(training_ratings.size());
  for (const auto& [item_id, truth] : training_ratings) {
    const ItemProfile* item = dataset.find_item(item_id);
    if (item == nullptr) {
      throw std::invalid_argument("fit_alpha: unknown item \"" + item_id + "\"");
    }
    examples.push_back({item_id,
                        item_compatibility(user, *item, dataset.schema, *config.measure),
                        preference_for(user, *item), truth});
  }
  return fit_alpha_from_examples(examples, config, relevance_threshold,
                                 dataset.schema.v_max);
}

RankedList rank_scored(std::vector<RankedEntry> scored, int n) {
  if (n < 0) throw std::invalid_argument("top_n: n must be non-negative");
  std::sort(scored.begin(), scored.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.item < b.item;
            });
  if (scored.size() > static_cast<std::size_t>(n)) {
    scored.resize(static_cast<std::size_t>(n));
  }
  return scored;
}

RankedList top_n(const UserProfile& user,
                 std::span<const ItemProfile* const> candidates,
                 const FeatureSchema& schema, const AlgorithmConfig& config,
                 double alpha, int n) {
  std::vector<RankedEntry> scored;
  scored.reserve(candidates.size());
  for (const ItemProfile* item : candidates) {
    scored.push_back({item->id, predict_rating(user, *item, schema, config, alpha)});
  }
  return rank_scored(std::move(scored), n);
}

}  // namespace sensorec
