#include "sensorec/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sensorec/aversion.hpp"

namespace sensorec {

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::Min: return "Min";
    case Measure::Ave: return "Ave";
    case Measure::Cos: return "Cos";
    case Measure::RMSD: return "RMSD";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  if (text == "min" || text == "Min") return Measure::Min;
  if (text == "ave" || text == "Ave") return Measure::Ave;
  if (text == "cos" || text == "Cos") return Measure::Cos;
  if (text == "rmsd" || text == "RMSD") return Measure::RMSD;
  return std::nullopt;
}

std::vector<double> feature_compatibilities(const UserProfile& user,
                                            const ItemProfile& item,
                                            const FeatureSchema& schema) {
  if (item.feature_values.size() != schema.size()) {
    throw std::invalid_argument("item " + item.id + " has " +
                                std::to_string(item.feature_values.size()) +
                                " feature values, schema defines " +
                                std::to_string(schema.size()));
  }
  std::vector<double> comps;
  comps.reserve(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const auto& feature = schema.features[f];
    const auto it = user.aversions.find(feature.id);
    if (it == user.aversions.end()) {
      throw std::invalid_argument("user " + user.id +
                                  " has no aversion declaration for feature \"" +
                                  feature.id + "\"");
    }
    const auto curve = AversionCurve::for_feature(feature, it->second, schema.v_max);
    comps.push_back(feature_compatibility(curve, item.feature_values[f]));
  }
  return comps;
}

double compat_min(std::span<const double> comps) {
  if (comps.empty()) throw std::invalid_argument("compat_min: empty list");
  double best = comps[0];
  for (const double c : comps) best = std::min(best, c);
  return best;
}

double compat_ave(std::span<const double> comps) {
  if (comps.empty()) throw std::invalid_argument("compat_ave: empty list");
  const double sum = std::accumulate(comps.begin(), comps.end(), 0.0);
  return sum / static_cast<double>(comps.size());
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
  if (std::equal(a.begin(), a.end(), b.begin())) return 1.0;
  double dot = 0.0, norm_a = 0.0, norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  // Cauchy-Schwarz caps the true value at 1; rounding must not push past it.
  return std::min(dot / std::sqrt(norm_a * norm_b), 1.0);
}

void check_dims(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument("vector dimensions mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

double rescale_cosine(double cos, int v_max) {
  return 1.0 + (v_max - 1.0) * cos;
}

double rmsd_complement(std::span<const double> a, std::span<const double> b,
                       int v_max) {
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum_sq += d * d;
  }
  return v_max + 1.0 - std::sqrt(sum_sq / static_cast<double>(a.size()));
}

}  // namespace

double compat_cos(std::span<const double> item_vec, std::span<const double> ideal,
                  int v_max) {
  check_dims(item_vec, ideal);
  return rescale_cosine(cosine(item_vec, ideal), v_max);
}

double compat_rmsd(std::span<const double> item_vec, std::span<const double> ideal,
                   int v_max) {
  check_dims(item_vec, ideal);
  return rmsd_complement(item_vec, ideal, v_max);
}

double item_compatibility(const UserProfile& user, const ItemProfile& item,
                          const FeatureSchema& schema, Measure measure) {
  switch (measure) {
    case Measure::Min:
      return compat_min(feature_compatibilities(user, item, schema));
    case Measure::Ave:
      return compat_ave(feature_compatibilities(user, item, schema));
    case Measure::Cos:
      return compat_cos(item.feature_values, ideal_vector(user, schema), schema.v_max);
    case Measure::RMSD:
      return compat_rmsd(item.feature_values, ideal_vector(user, schema), schema.v_max);
  }
  throw std::logic_error("unreachable measure");
}

double mc_score(const UserProfile& user, const ItemProfile& item,
                const FeatureSchema& schema, Measure measure) {
  const auto pref_it = user.preferences.find(item.category);
  if (pref_it == user.preferences.end()) {
    throw std::invalid_argument("user " + user.id + " has no preference for category \"" +
                                item.category + "\"");
  }
  std::vector<double> extended = feature_compatibilities(user, item, schema);
  extended.push_back(static_cast<double>(pref_it->second));

  switch (measure) {
    case Measure::Min:
      return compat_min(extended);
    case Measure::Ave:
      return compat_ave(extended);
    case Measure::Cos:
    case Measure::RMSD: {
      // Uniform reference: the best achievable extended vector is all v_max.
      const std::vector<double> reference(extended.size(),
                                          static_cast<double>(schema.v_max));
      return measure == Measure::Cos
                 ? compat_cos(extended, reference, schema.v_max)
                 : compat_rmsd(extended, reference, schema.v_max);
    }
  }
  throw std::logic_error("unreachable measure");
}

}  // namespace sensorec
