#include "sensorec/aversion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sensorec {

namespace {

void check_likert_int(int value, int v_max, const char* what) {
  if (value < 1 || value > v_max) {
    throw std::invalid_argument(std::string(what) + " " + std::to_string(value) +
                                " outside [1, " + std::to_string(v_max) + "]");
  }
}

void check_v_max(int v_max) {
  if (v_max < 2) {
    throw std::invalid_argument("v_max must be at least 2");
  }
}

void check_x(double x, int v_max) {
  if (!std::isfinite(x) || x < 1.0 || x > static_cast<double>(v_max)) {
    throw std::invalid_argument("feature value " + std::to_string(x) +
                                " outside [1, " + std::to_string(v_max) + "]");
  }
}

}  // namespace

AversionCurve AversionCurve::increasing(int aversion_at_max, int v_max) {
  check_v_max(v_max);
  check_likert_int(aversion_at_max, v_max, "aversion endpoint");
  return {FeatureKind::Increasing, v_max, 1, aversion_at_max};
}

AversionCurve AversionCurve::v_shaped(int aversion_at_min, int aversion_at_max,
                                      int v_max) {
  check_v_max(v_max);
  check_likert_int(aversion_at_min, v_max, "aversion endpoint");
  check_likert_int(aversion_at_max, v_max, "aversion endpoint");
  return {FeatureKind::VShaped, v_max, aversion_at_min, aversion_at_max};
}

AversionCurve AversionCurve::for_feature(const Feature& feature,
                                         const AversionDeclaration& declaration,
                                         int v_max) {
  if (feature.kind == FeatureKind::Increasing) {
    return increasing(declaration.at_max, v_max);
  }
  return v_shaped(declaration.at_min, declaration.at_max, v_max);
}

double line_up(double x, int aversion_at_max, int v_max) {
  check_v_max(v_max);
  check_x(x, v_max);
  return 1.0 + (aversion_at_max - 1.0) * (x - 1.0) / (v_max - 1.0);
}

double line_down(double x, int aversion_at_min, int v_max) {
  check_v_max(v_max);
  check_x(x, v_max);
  return 1.0 + (x - v_max) * (1.0 - aversion_at_min) / (v_max - 1.0);
}

double estimated_aversion(const AversionCurve& curve, double x) {
  if (curve.kind == FeatureKind::Increasing) {
    return line_up(x, curve.aversion_at_max, curve.v_max);
  }
  return std::max(line_up(x, curve.aversion_at_max, curve.v_max),
                  line_down(x, curve.aversion_at_min, curve.v_max));
}

double feature_compatibility(const AversionCurve& curve, double x) {
  return curve.v_max + 1.0 - estimated_aversion(curve, x);
}

double ideal_value(const AversionCurve& curve) {
  if (curve.kind == FeatureKind::Increasing) {
    return 1.0;
  }
  const double rise = curve.aversion_at_max - 1.0;
  const double fall = curve.aversion_at_min - 1.0;
  if (rise == 0.0 && fall == 0.0) {
    // Flat curve: every value is equally comfortable, take the midpoint.
    return (curve.v_max + 1.0) / 2.0;
  }
  // Intersection of the two lines; collapses to 1 or v_max when one
  // endpoint declares no aversion.
  return (rise + fall * curve.v_max) / (rise + fall);
}

std::vector<double> ideal_vector(const UserProfile& user, const FeatureSchema& schema) {
  std::vector<double> ideal;
  ideal.reserve(schema.size());
  for (const auto& feature : schema.features) {
    const auto it = user.aversions.find(feature.id);
    if (it == user.aversions.end()) {
      throw std::invalid_argument("user " + user.id +
                                  " has no aversion declaration for feature \"" +
                                  feature.id + "\"");
    }
    ideal.push_back(ideal_value(AversionCurve::for_feature(feature, it->second,
                                                           schema.v_max)));
  }
  return ideal;
}

}  // namespace sensorec
