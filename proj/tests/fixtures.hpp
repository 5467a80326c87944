// Small hand-built datasets shared across test files.
#pragma once

#include "sensorec/domain.hpp"

namespace sensorec::testing {

// Two features (one of each kind), two categories, two users, three items.
// Well-formed by construction; tests mutate copies to break specific rules.
inline Dataset tiny_dataset() {
  Dataset dataset;
  dataset.schema.v_max = 5;
  dataset.schema.features = {{"noise", FeatureKind::Increasing},
                             {"brightness", FeatureKind::VShaped}};
  dataset.categories = make_category_set({"cafes", "parks"});

  UserProfile u1;
  u1.id = "u1";
  u1.preferences = {{"cafes", 4}, {"parks", 2}};
  u1.aversions = {{"noise", {1, 5}}, {"brightness", {3, 4}}};
  u1.ratings = {{"i1", 4.0}, {"i2", 2.0}};

  UserProfile u2;
  u2.id = "u2";
  u2.preferences = {{"cafes", 1}, {"parks", 5}};
  u2.aversions = {{"noise", {1, 2}}, {"brightness", {1, 1}}};
  u2.ratings = {{"i3", 5.0}};

  ItemProfile i1{"i1", "quiet cafe", "cafes", {1.5, 2.6}};
  ItemProfile i2{"i2", "loud cafe", "cafes", {4.8, 4.0}};
  ItemProfile i3{"i3", "city park", "parks", {2.0, 3.0}};

  dataset.users = {u1, u2};
  dataset.items = {i1, i2, i3};
  dataset.canonicalize();
  return dataset;
}

}  // namespace sensorec::testing
