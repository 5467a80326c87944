#include "sensorec/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sensorec/csv.hpp"
#include "sensorec/predictor.hpp"
#include "sensorec/random.hpp"

namespace sensorec {

AlphaDistribution AlphaDistribution::point(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha point mass outside [0, 1]");
  }
  return {Kind::Point, alpha};
}

AlphaDistribution AlphaDistribution::uniform() { return {Kind::Uniform, 0.5}; }

namespace {

// Zero-padded so the generated ids sort in generation order.
std::string padded_id(const char* prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t rest = count; rest >= 10; rest /= 10) ++width;
  std::string digits = std::to_string(index);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

std::vector<CategoryId> category_names(std::size_t count) {
  std::vector<CategoryId> names = default_categories().categories;
  if (count <= names.size()) {
    names.resize(count);
    return names;
  }
  for (std::size_t c = names.size() + 1; c <= count; ++c) {
    names.push_back("category_" + std::to_string(c));
  }
  return names;
}

void check_spec(const SyntheticSpec& spec) {
  if (spec.user_count < 1 || spec.item_count < 1 || spec.category_count < 1) {
    throw std::invalid_argument("synthetic counts must be at least 1");
  }
  if (!(spec.rating_density > 0.0 && spec.rating_density <= 1.0)) {
    throw std::invalid_argument("rating density must lie in (0, 1]");
  }
  if (!(spec.noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigma must be non-negative");
  }
  if (spec.alpha.kind == AlphaDistribution::Kind::Point &&
      !(spec.alpha.value >= 0.0 && spec.alpha.value <= 1.0)) {
    throw std::invalid_argument("alpha point mass outside [0, 1]");
  }
}

}  // namespace

std::pair<Dataset, LatentTruth> generate_synthetic(const SyntheticSpec& spec) {
  check_spec(spec);

  Dataset dataset;
  dataset.schema = spec.schema.features.empty() ? default_schema() : spec.schema;
  dataset.categories = make_category_set(category_names(spec.category_count));
  const int v_max = dataset.schema.v_max;

  rng::Engine engine(rng::mix(spec.seed, "synthetic"));

  // Items first, then user profiles, then ratings: one fixed draw order so a
  // seed pins every byte of the output.
  dataset.items.reserve(spec.item_count);
  for (std::size_t i = 1; i <= spec.item_count; ++i) {
    ItemProfile item;
    item.id = padded_id("i", i, spec.item_count);
    item.name = "place " + std::to_string(i);
    const int category = rng::uniform_int(
        engine, 0, static_cast<int>(dataset.categories.size()) - 1);
    item.category = dataset.categories.categories[static_cast<std::size_t>(category)];
    item.feature_values.reserve(dataset.schema.size());
    for (std::size_t f = 0; f < dataset.schema.size(); ++f) {
      item.feature_values.push_back(
          rng::uniform_real(engine, 1.0, static_cast<double>(v_max)));
    }
    dataset.items.push_back(std::move(item));
  }

  LatentTruth truth;
  dataset.users.reserve(spec.user_count);
  for (std::size_t u = 1; u <= spec.user_count; ++u) {
    UserProfile user;
    user.id = padded_id("u", u, spec.user_count);
    for (const CategoryId& category : dataset.categories.categories) {
      user.preferences[category] = rng::uniform_int(engine, 1, v_max);
    }
    for (const Feature& feature : dataset.schema.features) {
      AversionDeclaration decl;
      decl.at_max = rng::uniform_int(engine, 1, v_max);
      if (feature.kind == FeatureKind::VShaped) {
        decl.at_min = rng::uniform_int(engine, 1, v_max);
      }
      user.aversions[feature.id] = decl;
    }
    truth.alpha_star[user.id] =
        spec.alpha.kind == AlphaDistribution::Kind::Point
            ? spec.alpha.value
            : rng::uniform_real(engine, 0.0, 1.0);
    dataset.users.push_back(std::move(user));
  }

  for (UserProfile& user : dataset.users) {
    const double alpha_star = truth.alpha_star[user.id];
    auto& noiseless = truth.noiseless_rating[user.id];
    for (const ItemProfile& item : dataset.items) {
      const double comp =
          item_compatibility(user, item, dataset.schema, spec.generating_measure);
      const double pref = static_cast<double>(user.preferences.at(item.category));
      noiseless[item.id] =
          predict_from_scores(Family::Ind, comp, pref, alpha_star, v_max);

      if (!rng::bernoulli(engine, spec.rating_density)) continue;
      const double noise = spec.noise_sigma * rng::normal(engine);
      double observed = clamp_rating(
          alpha_star * comp + (1.0 - alpha_star) * pref + noise, v_max);
      if (!spec.exact_ratings) observed = std::round(observed);
      user.ratings[item.id] = observed;
    }
  }

  dataset.canonicalize();
  return {std::move(dataset), std::move(truth)};
}

void save_latent_truth(const LatentTruth& truth,
                       const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);

  std::string alpha_text = csv::format_row({"user_id", "alpha_star"});
  for (const auto& [user, alpha] : truth.alpha_star) {
    alpha_text += csv::format_row({user, csv::format_double(alpha)});
  }

  std::string ratings_text =
      csv::format_row({"user_id", "item_id", "noiseless_rating"});
  for (const auto& [user, items] : truth.noiseless_rating) {
    for (const auto& [item, rating] : items) {
      ratings_text += csv::format_row({user, item, csv::format_double(rating)});
    }
  }

  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
  };
  write(directory / "latent_alpha.csv", alpha_text);
  write(directory / "latent_ratings.csv", ratings_text);
}

}  // namespace sensorec
