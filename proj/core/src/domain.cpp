#include "sensorec/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sensorec {

std::string_view feature_kind_name(FeatureKind kind) {
  return kind == FeatureKind::Increasing ? "increasing" : "vshaped";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view text) {
  if (text == "increasing") return FeatureKind::Increasing;
  if (text == "vshaped") return FeatureKind::VShaped;
  return std::nullopt;
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view feature_id) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].id == feature_id) return i;
  }
  return std::nullopt;
}

FeatureSchema default_schema() {
  FeatureSchema schema;
  schema.v_max = 5;
  schema.features = {
      {"crowding", FeatureKind::Increasing},
      {"noise", FeatureKind::Increasing},
      {"smell", FeatureKind::Increasing},
      {"brightness", FeatureKind::VShaped},
      {"space", FeatureKind::VShaped},
  };
  return schema;
}

bool CategorySet::contains(std::string_view category_id) const {
  return std::binary_search(categories.begin(), categories.end(), category_id);
}

CategorySet make_category_set(std::vector<CategoryId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return CategorySet{std::move(ids)};
}

CategorySet default_categories() {
  return make_category_set({
      "nature", "museums", "cinema", "comic_shops", "clothing_stores",
      "malls", "library", "bookshop", "sport", "cafes", "restaurants",
      "ice_cream", "squares", "stations",
  });
}

void Dataset::canonicalize() {
  std::sort(users.begin(), users.end(),
            [](const UserProfile& a, const UserProfile& b) { return a.id < b.id; });
  std::sort(items.begin(), items.end(),
            [](const ItemProfile& a, const ItemProfile& b) { return a.id < b.id; });
}

const UserProfile* Dataset::find_user(std::string_view user_id) const {
  for (const auto& user : users) {
    if (user.id == user_id) return &user;
  }
  return nullptr;
}

const ItemProfile* Dataset::find_item(std::string_view item_id) const {
  for (const auto& item : items) {
    if (item.id == item_id) return &item;
  }
  return nullptr;
}

std::string Violation::to_string() const { return entity + ": " + rule; }

namespace {

bool in_likert_range(double value, int v_max) {
  return value >= 1.0 && value <= static_cast<double>(v_max);
}

void check_schema(const FeatureSchema& schema, std::vector<Violation>& out) {
  if (schema.v_max < 2) {
    out.push_back({"schema", "v_max must be at least 2, got " +
                                 std::to_string(schema.v_max)});
  }
  if (schema.features.empty()) {
    out.push_back({"schema", "feature list is empty"});
  }
  std::set<FeatureId> seen;
  for (const auto& feature : schema.features) {
    if (!seen.insert(feature.id).second) {
      out.push_back({"schema", "duplicate feature id \"" + feature.id + "\""});
    }
  }
}

void check_categories(const CategorySet& categories, std::vector<Violation>& out) {
  if (categories.categories.empty()) {
    out.push_back({"categories", "category set is empty"});
  }
  for (std::size_t i = 1; i < categories.categories.size(); ++i) {
    if (categories.categories[i - 1] == categories.categories[i]) {
      out.push_back({"categories",
                     "duplicate category id \"" + categories.categories[i] + "\""});
    }
  }
}

void check_item(const ItemProfile& item, const Dataset& dataset,
                std::vector<Violation>& out) {
  const auto& schema = dataset.schema;
  const std::string entity = "item " + item.id;
  if (!dataset.categories.contains(item.category)) {
    out.push_back({entity, "category \"" + item.category + "\" is not declared"});
  }
  if (item.feature_values.size() != schema.size()) {
    out.push_back({entity, "has " + std::to_string(item.feature_values.size()) +
                               " feature values, schema defines " +
                               std::to_string(schema.size())});
    return;
  }
  for (std::size_t f = 0; f < schema.size(); ++f) {
    const double value = item.feature_values[f];
    if (!std::isfinite(value) || !in_likert_range(value, schema.v_max)) {
      std::ostringstream rule;
      rule << "feature \"" << schema.features[f].id << "\" value " << value
           << " outside [1, " << schema.v_max << "]";
      out.push_back({entity, rule.str()});
    }
  }
}

void check_user(const UserProfile& user, const Dataset& dataset,
                std::vector<Violation>& out) {
  const auto& schema = dataset.schema;
  const std::string entity = "user " + user.id;

  for (const auto& category : dataset.categories.categories) {
    if (!user.preferences.contains(category)) {
      out.push_back({entity, "missing preference for category \"" + category + "\""});
    }
  }
  for (const auto& [category, value] : user.preferences) {
    if (!dataset.categories.contains(category)) {
      out.push_back({entity, "preference for undeclared category \"" + category + "\""});
    }
    if (!in_likert_range(value, schema.v_max)) {
      out.push_back({entity, "preference for \"" + category + "\" value " +
                                 std::to_string(value) + " outside [1, " +
                                 std::to_string(schema.v_max) + "]"});
    }
  }

  for (const auto& feature : schema.features) {
    const auto it = user.aversions.find(feature.id);
    if (it == user.aversions.end()) {
      out.push_back({entity, "missing aversion declaration for feature \"" +
                                 feature.id + "\""});
      continue;
    }
    const auto& decl = it->second;
    if (!in_likert_range(decl.at_max, schema.v_max)) {
      out.push_back({entity, "aversion at max of \"" + feature.id + "\" value " +
                                 std::to_string(decl.at_max) + " outside [1, " +
                                 std::to_string(schema.v_max) + "]"});
    }
    if (feature.kind == FeatureKind::VShaped &&
        !in_likert_range(decl.at_min, schema.v_max)) {
      out.push_back({entity, "aversion at min of \"" + feature.id + "\" value " +
                                 std::to_string(decl.at_min) + " outside [1, " +
                                 std::to_string(schema.v_max) + "]"});
    }
  }
  for (const auto& [feature_id, decl] : user.aversions) {
    (void)decl;
    if (!schema.index_of(feature_id)) {
      out.push_back({entity, "aversion declaration for unknown feature \"" +
                                 feature_id + "\""});
    }
  }

  for (const auto& [item_id, rating] : user.ratings) {
    if (dataset.find_item(item_id) == nullptr) {
      out.push_back({entity, "rating references unknown item \"" + item_id + "\""});
    }
    if (!std::isfinite(rating) || !in_likert_range(rating, schema.v_max)) {
      std::ostringstream rule;
      rule << "rating for \"" << item_id << "\" value " << rating
           << " outside [1, " << schema.v_max << "]";
      out.push_back({entity, rule.str()});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Dataset& dataset) {
  std::vector<Violation> out;
  check_schema(dataset.schema, out);
  check_categories(dataset.categories, out);

  std::set<ItemId> item_ids;
  for (const auto& item : dataset.items) {
    if (!item_ids.insert(item.id).second) {
      out.push_back({"item " + item.id, "duplicate item id"});
    }
    check_item(item, dataset, out);
  }
  std::set<UserId> user_ids;
  for (const auto& user : dataset.users) {
    if (!user_ids.insert(user.id).second) {
      out.push_back({"user " + user.id, "duplicate user id"});
    }
    check_user(user, dataset, out);
  }
  return out;
}

}  // namespace sensorec
