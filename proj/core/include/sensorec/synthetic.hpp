// Synthetic dataset generation with latent ground truth, used by the oracle
// tests and for experiments at arbitrary scale.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <utility>

#include "sensorec/aggregation.hpp"
#include "sensorec/domain.hpp"

namespace sensorec {

struct AlphaDistribution {
  enum class Kind { Point, Uniform };
  Kind kind = Kind::Uniform;
  double value = 0.5;  // the point mass, ignored for Uniform

  static AlphaDistribution point(double alpha);
  static AlphaDistribution uniform();
};

struct SyntheticSpec {
  std::size_t user_count = 100;
  std::size_t item_count = 50;
  std::size_t category_count = 14;
  FeatureSchema schema;  // default_schema() when left empty
  AlphaDistribution alpha;
  Measure generating_measure = Measure::Ave;
  double noise_sigma = 0.3;      // >= 0
  double rating_density = 0.7;   // in (0, 1]
  bool exact_ratings = false;    // skip Likert rounding, for oracle tests
  std::uint64_t seed = 0;
};

struct LatentTruth {
  std::map<UserId, double> alpha_star;
  // Noise-free weighted-mean rating for every (user, item) pair, clamped.
  std::map<UserId, std::map<ItemId, double>> noiseless_rating;
};

// Preferences and aversion endpoints are uniform Likert integers, item
// features uniform reals in [1, v_max], alpha* from the configured
// distribution. Observed ratings follow the weighted-mean model under the
// generating measure plus Normal(0, sigma) noise, clamped and (unless
// exact_ratings) rounded. Fully determined by the seed.
std::pair<Dataset, LatentTruth> generate_synthetic(const SyntheticSpec& spec);

// latent_alpha.csv and latent_ratings.csv next to the dataset files.
void save_latent_truth(const LatentTruth& truth, const std::filesystem::path& directory);

}  // namespace sensorec
