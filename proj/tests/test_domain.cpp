#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "sensorec/domain.hpp"

using namespace sensorec;
using sensorec::testing::tiny_dataset;

namespace {

bool has_violation(const std::vector<Violation>& violations,
                   std::string_view entity, std::string_view rule_part) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) {
                       return v.entity == entity &&
                              v.rule.find(rule_part) != std::string::npos;
                     });
}

}  // namespace

TEST_CASE("feature kind names round-trip") {
  CHECK(feature_kind_name(FeatureKind::Increasing) == "increasing");
  CHECK(feature_kind_name(FeatureKind::VShaped) == "vshaped");
  CHECK(parse_feature_kind("increasing") == FeatureKind::Increasing);
  CHECK(parse_feature_kind("vshaped") == FeatureKind::VShaped);
  CHECK(!parse_feature_kind("monotone"));
  CHECK(!parse_feature_kind(""));
}

TEST_CASE("default schema lists the five stock features") {
  const FeatureSchema schema = default_schema();
  REQUIRE(schema.size() == 5);
  CHECK(schema.v_max == 5);
  CHECK(schema.features[0].id == "crowding");
  CHECK(schema.features[1].id == "noise");
  CHECK(schema.features[2].id == "smell");
  CHECK(schema.features[3].id == "brightness");
  CHECK(schema.features[4].id == "space");
  CHECK(schema.features[2].kind == FeatureKind::Increasing);
  CHECK(schema.features[3].kind == FeatureKind::VShaped);
  CHECK(schema.features[4].kind == FeatureKind::VShaped);
}

TEST_CASE("schema index_of") {
  const FeatureSchema schema = default_schema();
  CHECK(schema.index_of("noise") == 1);
  CHECK(schema.index_of("space") == 4);
  CHECK(!schema.index_of("altitude"));
}

TEST_CASE("category set is sorted, unique, and searchable") {
  const CategorySet set = make_category_set({"parks", "cafes", "parks", "zoos"});
  REQUIRE(set.size() == 3);
  CHECK(set.categories == std::vector<CategoryId>{"cafes", "parks", "zoos"});
  CHECK(set.contains("parks"));
  CHECK(!set.contains("museums"));

  const CategorySet stock = default_categories();
  CHECK(stock.size() == 14);
  CHECK(stock.contains("cafes"));
  CHECK(std::is_sorted(stock.categories.begin(), stock.categories.end()));
}

TEST_CASE("canonicalize orders users and items by id") {
  Dataset dataset = tiny_dataset();
  std::swap(dataset.users[0], dataset.users[1]);
  std::swap(dataset.items[0], dataset.items[2]);
  dataset.canonicalize();
  CHECK(dataset.users[0].id == "u1");
  CHECK(dataset.users[1].id == "u2");
  CHECK(dataset.items[0].id == "i1");
  CHECK(dataset.items[2].id == "i3");
}

TEST_CASE("find_user and find_item") {
  const Dataset dataset = tiny_dataset();
  REQUIRE(dataset.find_user("u2") != nullptr);
  CHECK(dataset.find_user("u2")->preferences.at("parks") == 5);
  CHECK(dataset.find_user("nobody") == nullptr);
  REQUIRE(dataset.find_item("i3") != nullptr);
  CHECK(dataset.find_item("i3")->category == "parks");
  CHECK(dataset.find_item("i9") == nullptr);
}

TEST_CASE("violation rendering") {
  CHECK(Violation{"user u1", "broke a rule"}.to_string() == "user u1: broke a rule");
}

TEST_CASE("tiny dataset is well formed") {
  CHECK(validate(tiny_dataset()).empty());
}

TEST_CASE("validate flags schema problems") {
  Dataset dataset = tiny_dataset();
  dataset.schema.v_max = 1;
  CHECK(has_violation(validate(dataset), "schema", "v_max"));

  dataset = tiny_dataset();
  dataset.schema.features.push_back({"noise", FeatureKind::Increasing});
  CHECK(has_violation(validate(dataset), "schema", "duplicate feature id \"noise\""));

  dataset = tiny_dataset();
  dataset.schema.features.clear();
  CHECK(has_violation(validate(dataset), "schema", "feature list is empty"));
}

TEST_CASE("validate flags category problems") {
  Dataset dataset = tiny_dataset();
  dataset.categories.categories.clear();
  const auto violations = validate(dataset);
  CHECK(has_violation(violations, "categories", "empty"));

  dataset = tiny_dataset();
  dataset.categories.categories = {"cafes", "cafes", "parks"};
  CHECK(has_violation(validate(dataset), "categories", "duplicate category"));
}

TEST_CASE("validate flags item problems") {
  Dataset dataset = tiny_dataset();
  dataset.items[0].category = "nightclubs";
  CHECK(has_violation(validate(dataset), "item i1",
                      "category \"nightclubs\" is not declared"));

  dataset = tiny_dataset();
  dataset.items[0].feature_values = {2.0};
  CHECK(has_violation(validate(dataset), "item i1", "schema defines 2"));

  dataset = tiny_dataset();
  dataset.items[0].feature_values[1] = 5.5;
  CHECK(has_violation(validate(dataset), "item i1", "outside [1, 5]"));

  dataset = tiny_dataset();
  dataset.items[0].feature_values[0] = 0.25;
  CHECK(has_violation(validate(dataset), "item i1", "outside [1, 5]"));

  dataset = tiny_dataset();
  dataset.items.push_back(dataset.items[1]);
  CHECK(has_violation(validate(dataset), "item i2", "duplicate item id"));
}

TEST_CASE("validate flags user profile problems") {
  Dataset dataset = tiny_dataset();
  dataset.users[0].preferences.erase("parks");
  CHECK(has_violation(validate(dataset), "user u1",
                      "missing preference for category \"parks\""));

  dataset = tiny_dataset();
  dataset.users[0].preferences["zoos"] = 3;
  CHECK(has_violation(validate(dataset), "user u1",
                      "preference for undeclared category \"zoos\""));

  dataset = tiny_dataset();
  dataset.users[0].preferences["cafes"] = 6;
  CHECK(has_violation(validate(dataset), "user u1", "outside [1, 5]"));

  dataset = tiny_dataset();
  dataset.users[0].aversions.erase("brightness");
  CHECK(has_violation(validate(dataset), "user u1",
                      "missing aversion declaration for feature \"brightness\""));

  dataset = tiny_dataset();
  dataset.users[0].aversions["brightness"].at_max = 0;
  CHECK(has_violation(validate(dataset), "user u1", "aversion at max"));

  dataset = tiny_dataset();
  dataset.users[0].aversions["brightness"].at_min = 9;
  CHECK(has_violation(validate(dataset), "user u1", "aversion at min"));

  dataset = tiny_dataset();
  dataset.users[0].aversions["altitude"] = {1, 3};
  CHECK(has_violation(validate(dataset), "user u1",
                      "aversion declaration for unknown feature \"altitude\""));

  dataset = tiny_dataset();
  dataset.users.push_back(dataset.users[0]);
  CHECK(has_violation(validate(dataset), "user u1", "duplicate user id"));
}

TEST_CASE("the minimum aversion endpoint of an increasing feature is free") {
  // Increasing curves pin the minimum endpoint to 1 by construction, so a
  // stray declared value there is not a data error.
  Dataset dataset = tiny_dataset();
  dataset.users[0].aversions["noise"].at_min = 99;
  CHECK(validate(dataset).empty());
}

TEST_CASE("validate flags rating problems") {
  Dataset dataset = tiny_dataset();
  dataset.users[0].ratings["ghost"] = 3.0;
  CHECK(has_violation(validate(dataset), "user u1",
                      "rating references unknown item \"ghost\""));

  dataset = tiny_dataset();
  dataset.users[0].ratings["i1"] = 7.0;
  CHECK(has_violation(validate(dataset), "user u1", "outside [1, 5]"));

  dataset = tiny_dataset();
  dataset.users[0].ratings["i1"] = 0.0;
  CHECK(!validate(dataset).empty());
}
