// Piecewise-linear aversion interpolation, per-feature compatibility and
// the per-user ideal feature vector.
#pragma once

#include <vector>

#include "sensorec/domain.hpp"

namespace sensorec {

// Interpolated aversion over [1, v_max] for one (user, feature) pair.
// Increasing curves follow line_up from (1,1) to (v_max, at_max); VShaped
// curves take the max of line_up and the falling line through (1, at_min)
// and (v_max, 1).
struct AversionCurve {
  FeatureKind kind = FeatureKind::Increasing;
  int v_max = 5;
  int aversion_at_min = 1;  // forced to 1 for Increasing
  int aversion_at_max = 1;

  static AversionCurve increasing(int aversion_at_max, int v_max);
  static AversionCurve v_shaped(int aversion_at_min, int aversion_at_max, int v_max);
  static AversionCurve for_feature(const Feature& feature,
                                   const AversionDeclaration& declaration,
                                   int v_max);
};

// Rising line through (1, 1) and (v_max, aversion_at_max).
double line_up(double x, int aversion_at_max, int v_max);

// Falling line through (1, aversion_at_min) and (v_max, 1).
double line_down(double x, int aversion_at_min, int v_max);

// Interpolated aversion at x; x outside [1, v_max] is rejected.
double estimated_aversion(const AversionCurve& curve, double x);

// Complement of aversion on the Likert scale: v_max + 1 - aversion.
double feature_compatibility(const AversionCurve& curve, double x);

// Feature value with minimum interpolated aversion. 1 for Increasing
// curves; the intersection of the two lines for VShaped ones. A flat
// VShaped curve (both endpoints 1) yields the scale midpoint.
double ideal_value(const AversionCurve& curve);

// Component-wise ideal_value over the schema, in schema order.
std::vector<double> ideal_vector(const UserProfile& user, const FeatureSchema& schema);

}  // namespace sensorec
