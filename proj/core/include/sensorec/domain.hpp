// Shared data model: sensory feature schema, user and item profiles,
// and the dataset container with its validation rules.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sensorec {

using UserId = std::string;
using ItemId = std::string;
using FeatureId = std::string;
using CategoryId = std::string;

// Increasing: aversion grows with the feature value (e.g. noise).
// VShaped: both extremes are aversive, the middle is comfortable (e.g. brightness).
enum class FeatureKind { Increasing, VShaped };

std::string_view feature_kind_name(FeatureKind kind);
std::optional<FeatureKind> parse_feature_kind(std::string_view text);

struct Feature {
  FeatureId id;
  FeatureKind kind = FeatureKind::Increasing;
};

struct FeatureSchema {
  std::vector<Feature> features;
  int v_max = 5;  // Likert upper bound, >= 2

  std::size_t size() const { return features.size(); }
  std::optional<std::size_t> index_of(std::string_view feature_id) const;
};

// The stock schema: crowding, noise, smell rise monotonically in aversion;
// brightness and space are uncomfortable at both extremes.
FeatureSchema default_schema();

struct CategorySet {
  std::vector<CategoryId> categories;  // kept sorted and unique

  bool contains(std::string_view category_id) const;
  std::size_t size() const { return categories.size(); }
};

CategorySet make_category_set(std::vector<CategoryId> ids);

// The stock 14 activity categories used when none are supplied.
CategorySet default_categories();

// Declared aversion endpoints for one feature. For Increasing features the
// minimum endpoint is implicitly 1 and at_min is ignored by construction.
struct AversionDeclaration {
  int at_min = 1;
  int at_max = 1;
};

struct UserProfile {
  UserId id;
  std::map<CategoryId, int> preferences;            // category -> Likert
  std::map<FeatureId, AversionDeclaration> aversions;
  std::map<ItemId, double> ratings;                 // absent = "I don't know"
};

struct ItemProfile {
  ItemId id;
  std::string name;
  CategoryId category;
  std::vector<double> feature_values;  // aligned to schema order, crowd means
};

struct Dataset {
  FeatureSchema schema;
  CategorySet categories;
  std::vector<UserProfile> users;
  std::vector<ItemProfile> items;

  // Sorts users and items by id so downstream iteration order never depends
  // on input order.
  void canonicalize();

  const UserProfile* find_user(std::string_view user_id) const;
  const ItemProfile* find_item(std::string_view item_id) const;
};

struct Violation {
  std::string entity;  // who breaks the rule ("user u3", "item i9", ...)
  std::string rule;

  std::string to_string() const;
};

// Returns every broken invariant; empty means the dataset is well formed.
// Pure: never throws, never mutates.
std::vector<Violation> validate(const Dataset& dataset);

}  // namespace sensorec
