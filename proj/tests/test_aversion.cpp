#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "sensorec/aversion.hpp"
#include "sensorec/random.hpp"

using namespace sensorec;

TEST_CASE("rising line interpolates between the declared endpoints") {
  CHECK(line_up(3.0, 4, 5) == 2.5);
  CHECK(line_up(1.0, 4, 5) == 1.0);
  CHECK(line_up(5.0, 4, 5) == 4.0);
  CHECK(line_up(1.0, 5, 5) == 1.0);
  CHECK(line_up(5.0, 5, 5) == 5.0);
  // No declared aversion at the top: the line is flat at 1.
  CHECK(line_up(3.0, 1, 5) == 1.0);
}

TEST_CASE("falling line interpolates between the declared endpoints") {
  CHECK(line_down(1.0, 3, 5) == 3.0);
  CHECK(line_down(5.0, 3, 5) == 1.0);
  CHECK(line_down(3.0, 3, 5) == 2.0);
  CHECK(line_down(2.0, 1, 5) == 1.0);
}

TEST_CASE("lines reject feature values off the scale") {
  CHECK_THROWS_AS(line_up(0.99, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(line_up(5.01, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(line_down(0.0, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(line_up(3.0, 4, 1), std::invalid_argument);
}

TEST_CASE("curve constructors validate their endpoints") {
  CHECK_THROWS_AS(AversionCurve::increasing(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(AversionCurve::increasing(6, 5), std::invalid_argument);
  CHECK_THROWS_AS(AversionCurve::v_shaped(3, 7, 5), std::invalid_argument);
  CHECK_THROWS_AS(AversionCurve::v_shaped(0, 3, 5), std::invalid_argument);
}

TEST_CASE("increasing curves pin the minimum endpoint to 1") {
  const Feature noise{"noise", FeatureKind::Increasing};
  const auto curve = AversionCurve::for_feature(noise, {4, 5}, 5);
  CHECK(curve.aversion_at_min == 1);
  CHECK(curve.aversion_at_max == 5);
  CHECK(estimated_aversion(curve, 1.0) == 1.0);
  CHECK(estimated_aversion(curve, 5.0) == 5.0);
  CHECK(estimated_aversion(curve, 3.0) == 3.0);
}

TEST_CASE("v-shaped curves take the upper envelope of both lines") {
  const auto curve = AversionCurve::v_shaped(3, 4, 5);
  CHECK(estimated_aversion(curve, 1.0) == 3.0);   // falling line dominates
  CHECK(estimated_aversion(curve, 5.0) == 4.0);   // rising line dominates
  CHECK(estimated_aversion(curve, 3.0) == 2.5);   // max(2.5, 2.0)
}

TEST_CASE("estimated aversion rejects values off the scale") {
  const auto curve = AversionCurve::v_shaped(3, 4, 5);
  CHECK_THROWS_AS(estimated_aversion(curve, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(estimated_aversion(curve, 5.5), std::invalid_argument);
}

TEST_CASE("compatibility is the scale complement of aversion") {
  const auto harsh = AversionCurve::increasing(5, 5);
  CHECK(feature_compatibility(harsh, 5.0) == 1.0);
  CHECK(feature_compatibility(harsh, 1.0) == 5.0);
  CHECK(feature_compatibility(harsh, 3.0) == 3.0);

  const auto indifferent = AversionCurve::increasing(1, 5);
  CHECK(feature_compatibility(indifferent, 4.0) == 5.0);
}

TEST_CASE("ideal value sits where aversion bottoms out") {
  CHECK(ideal_value(AversionCurve::increasing(5, 5)) == 1.0);
  CHECK(ideal_value(AversionCurve::increasing(1, 5)) == 1.0);

  // Intersection of the two lines of a v-shaped curve.
  CHECK(ideal_value(AversionCurve::v_shaped(3, 4, 5)) == 2.6);
  // One flat side pushes the ideal to that side's end of the scale.
  CHECK(ideal_value(AversionCurve::v_shaped(1, 4, 5)) == 1.0);
  CHECK(ideal_value(AversionCurve::v_shaped(4, 1, 5)) == 5.0);
  // Entirely flat: the midpoint.
  CHECK(ideal_value(AversionCurve::v_shaped(1, 1, 5)) == 3.0);
}

TEST_CASE("ideal value minimizes aversion along a dense grid") {
  rng::Engine engine(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    const int at_min = rng::uniform_int(engine, 1, 5);
    const int at_max = rng::uniform_int(engine, 1, 5);
    const auto curve = trial % 2 == 0
                           ? AversionCurve::increasing(at_max, 5)
                           : AversionCurve::v_shaped(at_min, at_max, 5);
    const double ideal = ideal_value(curve);
    REQUIRE(ideal >= 1.0);
    REQUIRE(ideal <= 5.0);
    const double floor = estimated_aversion(curve, ideal);
    for (int i = 0; i <= 200; ++i) {
      const double x = 1.0 + 4.0 * (static_cast<double>(i) / 200.0);
      REQUIRE(estimated_aversion(curve, x) >= floor - 1e-9);
    }
  }
}

TEST_CASE("ideal vector follows schema order") {
  const Dataset dataset = sensorec::testing::tiny_dataset();
  const UserProfile& u1 = dataset.users[0];
  const auto ideal = ideal_vector(u1, dataset.schema);
  REQUIRE(ideal.size() == 2);
  CHECK(ideal[0] == 1.0);   // noise, increasing
  CHECK(ideal[1] == 2.6);   // brightness, v-shaped (3, 4)
}

TEST_CASE("ideal vector rejects missing declarations") {
  const Dataset dataset = sensorec::testing::tiny_dataset();
  UserProfile bare = dataset.users[0];
  bare.aversions.erase("brightness");
  CHECK_THROWS_WITH_AS(ideal_vector(bare, dataset.schema),
                       doctest::Contains("brightness"), std::invalid_argument);
}
