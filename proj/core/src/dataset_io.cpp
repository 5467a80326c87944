#include "sensorec/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "sensorec/csv.hpp"

namespace sensorec {

namespace fs = std::filesystem;
using nlohmann::json;

ValidationError::ValidationError(std::string message,
                                 std::vector<Violation> violations)
    : std::runtime_error(std::move(message)), violations_(std::move(violations)) {}

namespace {

std::string_view trimmed(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  return text;
}

double parse_double(std::string_view raw, const std::string& context) {
  const std::string_view text = trimmed(raw);
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size() ||
      text.empty()) {
    throw ParseError(context + ": \"" + std::string(raw) + "\" is not a number");
  }
  return value;
}

int parse_int(std::string_view raw, const std::string& context) {
  const std::string_view text = trimmed(raw);
  int value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size() ||
      text.empty()) {
    throw ParseError(context + ": \"" + std::string(raw) + "\" is not an integer");
  }
  return value;
}

csv::Table read_table(const fs::path& path) {
  try {
    return csv::read_file(path);
  } catch (const std::exception& error) {
    throw ParseError(error.what());
  }
}

std::size_t require_column(const csv::Table& table, std::string_view name) {
  const std::size_t index = table.column(name);
  if (index == csv::npos) {
    throw ParseError(table.source + ": missing column \"" + std::string(name) +
                     "\"");
  }
  return index;
}

std::string row_context(const csv::Table& table, std::size_t row) {
  return table.source + " record " + std::to_string(row + 1);
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  json parsed;
  try {
    parsed = json::parse(in, nullptr, /*allow_exceptions=*/true,
                         /*ignore_comments=*/true);
  } catch (const json::parse_error& error) {
    throw ParseError(path.string() + ": " + error.what());
  }
  return parsed;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

bool is_json(const fs::path& path) { return path.extension() == ".json"; }

// --- schema -----------------------------------------------------------------

FeatureSchema load_schema_csv(const fs::path& path) {
  const csv::Table table = read_table(path);
  const std::size_t id_col = require_column(table, "feature_id");
  const std::size_t kind_col = require_column(table, "kind");
  const std::size_t v_max_col = table.column("v_max");  // optional, default 5

  FeatureSchema schema;
  std::optional<int> v_max;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    Feature feature;
    feature.id = row[id_col];
    const auto kind = parse_feature_kind(row[kind_col]);
    if (!kind) {
      throw ParseError(row_context(table, r) + ": unknown feature kind \"" +
                       row[kind_col] + "\" (want increasing or vshaped)");
    }
    feature.kind = *kind;
    if (v_max_col != csv::npos) {
      const int value = parse_int(row[v_max_col], row_context(table, r));
      if (v_max && *v_max != value) {
        throw ParseError(row_context(table, r) +
                         ": v_max differs between rows");
      }
      v_max = value;
    }
    schema.features.push_back(std::move(feature));
  }
  schema.v_max = v_max.value_or(5);
  return schema;
}

FeatureSchema load_schema_json(const fs::path& path) {
  const json doc = read_json_file(path);
  FeatureSchema schema;
  try {
    schema.v_max = doc.value("v_max", 5);
    for (const json& entry : doc.at("features")) {
      Feature feature;
      feature.id = entry.at("id").get<std::string>();
      const std::string kind_text = entry.at("kind").get<std::string>();
      const auto kind = parse_feature_kind(kind_text);
      if (!kind) {
        throw ParseError(path.string() + ": unknown feature kind \"" +
                         kind_text + "\" (want increasing or vshaped)");
      }
      feature.kind = *kind;
      schema.features.push_back(std::move(feature));
    }
  } catch (const json::exception& error) {
    throw ParseError(path.string() + ": " + error.what());
  }
  return schema;
}

// --- items ------------------------------------------------------------------

std::vector<ItemProfile> load_items_csv(const fs::path& path,
                                        const FeatureSchema& schema) {
  const csv::Table table = read_table(path);
  const std::size_t id_col = require_column(table, "item_id");
  const std::size_t category_col = require_column(table, "category");
  const std::size_t name_col = table.column("name");  // optional

  std::vector<std::size_t> feature_cols;
  for (const Feature& feature : schema.features) {
    feature_cols.push_back(require_column(table, feature.id));
  }

  std::vector<ItemProfile> items;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    ItemProfile item;
    item.id = row[id_col];
    item.category = row[category_col];
    if (name_col != csv::npos) item.name = row[name_col];
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      item.feature_values.push_back(
          parse_double(row[feature_cols[f]], row_context(table, r) + " column \"" +
                                                 schema.features[f].id + "\""));
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::vector<ItemProfile> load_items_json(const fs::path& path,
                                         const FeatureSchema& schema) {
  const json doc = read_json_file(path);
  std::vector<ItemProfile> items;
  try {
    for (const json& entry : doc.at("items")) {
      ItemProfile item;
      item.id = entry.at("id").get<std::string>();
      item.name = entry.value("name", std::string());
      item.category = entry.at("category").get<std::string>();
      const json& features = entry.at("features");
      for (const Feature& feature : schema.features) {
        if (!features.contains(feature.id)) {
          throw ParseError(path.string() + ": item \"" + item.id +
                           "\" missing feature \"" + feature.id + "\"");
        }
        item.feature_values.push_back(features.at(feature.id).get<double>());
      }
      items.push_back(std::move(item));
    }
  } catch (const json::exception& error) {
    throw ParseError(path.string() + ": " + error.what());
  }
  return items;
}

// --- users ------------------------------------------------------------------

struct UsersFile {
  CategorySet categories;
  std::vector<UserProfile> users;
};

// users.csv is wide on the profile (one pref_/av_ column per category and
// feature endpoint) and long on ratings (one row per rating; profile columns
// repeat and must agree; a user with no ratings leaves item_id empty).
UsersFile load_users_csv(const fs::path& path, const FeatureSchema& schema) {
  const csv::Table table = read_table(path);
  const std::size_t id_col = require_column(table, "user_id");
  const std::size_t item_col = require_column(table, "item_id");
  const std::size_t rating_col = require_column(table, "rating");

  std::vector<CategoryId> categories;
  std::vector<std::size_t> pref_cols;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name.rfind("pref_", 0) == 0) {
      categories.push_back(name.substr(5));
      pref_cols.push_back(c);
    }
  }
  if (categories.empty()) {
    throw ParseError(table.source + ": no pref_<category> columns");
  }

  struct EndpointColumn {
    FeatureId feature;
    std::size_t at_min = csv::npos;  // npos for Increasing features
    std::size_t at_max = csv::npos;
  };
  std::vector<EndpointColumn> endpoint_cols;
  for (const Feature& feature : schema.features) {
    EndpointColumn cols;
    cols.feature = feature.id;
    cols.at_max = require_column(table, "av_max_" + feature.id);
    if (feature.kind == FeatureKind::VShaped) {
      cols.at_min = require_column(table, "av_min_" + feature.id);
    }
    endpoint_cols.push_back(cols);
  }

  // Profile columns, in header order, used for the per-user consistency check.
  std::vector<std::size_t> profile_cols = pref_cols;
  for (const EndpointColumn& cols : endpoint_cols) {
    if (cols.at_min != csv::npos) profile_cols.push_back(cols.at_min);
    profile_cols.push_back(cols.at_max);
  }

  UsersFile out;
  out.categories = make_category_set(categories);

  std::map<UserId, std::size_t> index_of;        // user -> position in out.users
  std::map<UserId, std::vector<std::string>> first_profile;
  std::map<UserId, std::size_t> first_row;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const UserId user_id = row[id_col];
    if (user_id.empty()) {
      throw ParseError(row_context(table, r) + ": empty user_id");
    }

    std::vector<std::string> profile;
    profile.reserve(profile_cols.size());
    for (const std::size_t c : profile_cols) profile.push_back(row[c]);

    const auto found = index_of.find(user_id);
    std::size_t index;
    if (found == index_of.end()) {
      UserProfile user;
      user.id = user_id;
      for (std::size_t p = 0; p < pref_cols.size(); ++p) {
        user.preferences[categories[p]] =
            parse_int(row[pref_cols[p]], row_context(table, r) + " column \"" +
                                             table.header[pref_cols[p]] + "\"");
      }
      for (const EndpointColumn& cols : endpoint_cols) {
        AversionDeclaration decl;
        decl.at_max = parse_int(row[cols.at_max],
                                row_context(table, r) + " column \"av_max_" +
                                    cols.feature + "\"");
        if (cols.at_min != csv::npos) {
          decl.at_min = parse_int(row[cols.at_min],
                                  row_context(table, r) + " column \"av_min_" +
                                      cols.feature + "\"");
        }
        user.aversions[cols.feature] = decl;
      }
      index = out.users.size();
      out.users.push_back(std::move(user));
      index_of[user_id] = index;
      first_profile[user_id] = profile;
      first_row[user_id] = r;
    } else {
      index = found->second;
      if (profile != first_profile[user_id]) {
        throw ParseError(row_context(table, r) + ": profile columns for user \"" +
                         user_id + "\" differ from record " +
                         std::to_string(first_row[user_id] + 1));
      }
    }

    const std::string& item_id = row[item_col];
    const std::string& rating = row[rating_col];
    if (item_id.empty() && std::string(trimmed(rating)).empty()) {
      continue;  // profile-only record
    }
    if (item_id.empty()) {
      throw ParseError(row_context(table, r) + ": rating without item_id");
    }
    const double value =
        parse_double(rating, row_context(table, r) + " column \"rating\"");
    if (!out.users[index].ratings.emplace(item_id, value).second) {
      throw ParseError(row_context(table, r) + ": duplicate rating for user \"" +
                       user_id + "\" item \"" + item_id + "\"");
    }
  }
  return out;
}

UsersFile load_users_json(const fs::path& path, const FeatureSchema& schema) {
  const json doc = read_json_file(path);
  UsersFile out;
  try {
    std::vector<CategoryId> categories;
    if (doc.contains("categories")) {
      for (const json& entry : doc.at("categories")) {
        categories.push_back(entry.get<std::string>());
      }
    }

    for (const json& entry : doc.at("users")) {
      UserProfile user;
      user.id = entry.at("id").get<std::string>();
      for (const auto& [category, value] : entry.at("preferences").items()) {
        user.preferences[category] = value.get<int>();
        if (!doc.contains("categories")) categories.push_back(category);
      }
      for (const auto& [feature, decl] : entry.at("aversions").items()) {
        AversionDeclaration aversion;
        aversion.at_max = decl.at("at_max").get<int>();
        aversion.at_min = decl.value("at_min", 1);
        user.aversions[feature] = aversion;
      }
      if (entry.contains("ratings")) {
        for (const auto& [item, value] : entry.at("ratings").items()) {
          user.ratings[item] = value.get<double>();
        }
      }
      out.users.push_back(std::move(user));
    }
    out.categories = make_category_set(std::move(categories));
  } catch (const json::exception& error) {
    throw ParseError(path.string() + ": " + error.what());
  }
  (void)schema;
  return out;
}

}  // namespace

DatasetPaths locate_dataset(const fs::path& directory) {
  if (!fs::is_directory(directory)) {
    throw ParseError(directory.string() + ": not a directory");
  }
  const auto pick = [&](const char* stem) {
    const fs::path csv_path = directory / (std::string(stem) + ".csv");
    const fs::path json_path = directory / (std::string(stem) + ".json");
    const bool have_csv = fs::exists(csv_path);
    const bool have_json = fs::exists(json_path);
    if (have_csv && have_json) {
      throw ParseError(directory.string() + ": both " + stem + ".csv and " +
                       stem + ".json present; keep exactly one");
    }
    if (!have_csv && !have_json) {
      throw ParseError(directory.string() + ": no " + stem + ".csv or " + stem +
                       ".json");
    }
    return have_csv ? csv_path : json_path;
  };
  return {pick("schema"), pick("items"), pick("users")};
}

FeatureSchema load_schema(const fs::path& path) {
  return is_json(path) ? load_schema_json(path) : load_schema_csv(path);
}

Dataset load_dataset(const DatasetPaths& paths) {
  Dataset dataset;
  dataset.schema = is_json(paths.schema) ? load_schema_json(paths.schema)
                                         : load_schema_csv(paths.schema);
  UsersFile users = is_json(paths.users)
                        ? load_users_json(paths.users, dataset.schema)
                        : load_users_csv(paths.users, dataset.schema);
  dataset.categories = std::move(users.categories);
  dataset.users = std::move(users.users);
  dataset.items = is_json(paths.items) ? load_items_json(paths.items, dataset.schema)
                                       : load_items_csv(paths.items, dataset.schema);
  dataset.canonicalize();

  std::vector<Violation> violations = validate(dataset);
  if (!violations.empty()) {
    std::ostringstream message;
    message << "dataset fails validation (" << violations.size()
            << (violations.size() == 1 ? " violation)" : " violations)");
    for (const Violation& violation : violations) {
      message << "\n  " << violation.to_string();
    }
    throw ValidationError(message.str(), std::move(violations));
  }
  return dataset;
}

Dataset load_dataset(const fs::path& directory) {
  return load_dataset(locate_dataset(directory));
}

void save_dataset_csv(const Dataset& dataset, const fs::path& directory) {
  fs::create_directories(directory);

  std::string schema_text = csv::format_row({"feature_id", "kind", "v_max"});
  for (const Feature& feature : dataset.schema.features) {
    schema_text += csv::format_row({feature.id,
                                    std::string(feature_kind_name(feature.kind)),
                                    std::to_string(dataset.schema.v_max)});
  }
  write_file(directory / "schema.csv", schema_text);

  std::vector<std::string> item_header = {"item_id", "name", "category"};
  for (const Feature& feature : dataset.schema.features) {
    item_header.push_back(feature.id);
  }
  std::string items_text = csv::format_row(item_header);
  for (const ItemProfile& item : dataset.items) {
    std::vector<std::string> row = {item.id, item.name, item.category};
    for (const double value : item.feature_values) {
      row.push_back(csv::format_double(value));
    }
    items_text += csv::format_row(row);
  }
  write_file(directory / "items.csv", items_text);

  std::vector<std::string> user_header = {"user_id"};
  for (const CategoryId& category : dataset.categories.categories) {
    user_header.push_back("pref_" + category);
  }
  for (const Feature& feature : dataset.schema.features) {
    if (feature.kind == FeatureKind::VShaped) {
      user_header.push_back("av_min_" + feature.id);
    }
    user_header.push_back("av_max_" + feature.id);
  }
  user_header.push_back("item_id");
  user_header.push_back("rating");

  std::string users_text = csv::format_row(user_header);
  for (const UserProfile& user : dataset.users) {
    std::vector<std::string> profile = {user.id};
    for (const CategoryId& category : dataset.categories.categories) {
      const auto it = user.preferences.find(category);
      profile.push_back(it == user.preferences.end() ? std::string()
                                                     : std::to_string(it->second));
    }
    for (const Feature& feature : dataset.schema.features) {
      const auto it = user.aversions.find(feature.id);
      const AversionDeclaration decl =
          it == user.aversions.end() ? AversionDeclaration{} : it->second;
      if (feature.kind == FeatureKind::VShaped) {
        profile.push_back(std::to_string(decl.at_min));
      }
      profile.push_back(std::to_string(decl.at_max));
    }

    if (user.ratings.empty()) {
      std::vector<std::string> row = profile;
      row.push_back("");
      row.push_back("");
      users_text += csv::format_row(row);
      continue;
    }
    for (const auto& [item_id, rating] : user.ratings) {
      std::vector<std::string> row = profile;
      row.push_back(item_id);
      row.push_back(csv::format_double(rating));
      users_text += csv::format_row(row);
    }
  }
  write_file(directory / "users.csv", users_text);
}

void save_dataset_json(const Dataset& dataset, const fs::path& directory) {
  fs::create_directories(directory);

  json schema_doc;
  schema_doc["v_max"] = dataset.schema.v_max;
  schema_doc["features"] = json::array();
  for (const Feature& feature : dataset.schema.features) {
    schema_doc["features"].push_back(
        {{"id", feature.id}, {"kind", std::string(feature_kind_name(feature.kind))}});
  }
  write_file(directory / "schema.json", schema_doc.dump(2) + "\n");

  json items_doc;
  items_doc["items"] = json::array();
  for (const ItemProfile& item : dataset.items) {
    json features = json::object();
    for (std::size_t f = 0; f < dataset.schema.features.size(); ++f) {
      features[dataset.schema.features[f].id] = item.feature_values[f];
    }
    items_doc["items"].push_back({{"id", item.id},
                                  {"name", item.name},
                                  {"category", item.category},
                                  {"features", std::move(features)}});
  }
  write_file(directory / "items.json", items_doc.dump(2) + "\n");

  json users_doc;
  users_doc["categories"] = dataset.categories.categories;
  users_doc["users"] = json::array();
  for (const UserProfile& user : dataset.users) {
    json preferences = json::object();
    for (const auto& [category, value] : user.preferences) {
      preferences[category] = value;
    }
    json aversions = json::object();
    for (const auto& [feature_id, decl] : user.aversions) {
      const auto index = dataset.schema.index_of(feature_id);
      const bool v_shaped =
          index && dataset.schema.features[*index].kind == FeatureKind::VShaped;
      json entry = {{"at_max", decl.at_max}};
      if (v_shaped) entry["at_min"] = decl.at_min;
      aversions[feature_id] = std::move(entry);
    }
    json ratings = json::object();
    for (const auto& [item_id, value] : user.ratings) ratings[item_id] = value;
    users_doc["users"].push_back({{"id", user.id},
                                  {"preferences", std::move(preferences)},
                                  {"aversions", std::move(aversions)},
                                  {"ratings", std::move(ratings)}});
  }
  write_file(directory / "users.json", users_doc.dump(2) + "\n");
}

}  // namespace sensorec
