#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "sensorec/csv.hpp"
#include "sensorec/dataset_io.hpp"
#include "temp_dir.hpp"

using namespace sensorec;
using sensorec::testing::TempDir;
using sensorec::testing::tiny_dataset;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

void check_same(const Dataset& a, const Dataset& b) {
  REQUIRE(a.schema.v_max == b.schema.v_max);
  REQUIRE(a.schema.size() == b.schema.size());
  for (std::size_t f = 0; f < a.schema.size(); ++f) {
    CHECK(a.schema.features[f].id == b.schema.features[f].id);
    CHECK(a.schema.features[f].kind == b.schema.features[f].kind);
  }
  CHECK(a.categories.categories == b.categories.categories);

  REQUIRE(a.users.size() == b.users.size());
  for (std::size_t u = 0; u < a.users.size(); ++u) {
    const UserProfile& left = a.users[u];
    const UserProfile& right = b.users[u];
    CHECK(left.id == right.id);
    CHECK(left.preferences == right.preferences);
    CHECK(left.ratings == right.ratings);
    REQUIRE(left.aversions.size() == right.aversions.size());
    for (const auto& [feature, decl] : left.aversions) {
      REQUIRE(right.aversions.count(feature) == 1);
      CHECK(decl.at_min == right.aversions.at(feature).at_min);
      CHECK(decl.at_max == right.aversions.at(feature).at_max);
    }
  }

  REQUIRE(a.items.size() == b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].id == b.items[i].id);
    CHECK(a.items[i].name == b.items[i].name);
    CHECK(a.items[i].category == b.items[i].category);
    CHECK(a.items[i].feature_values == b.items[i].feature_values);
  }
}

// Minimal well-formed file set matching the tiny fixture's schema, built by
// hand so individual pieces can be corrupted per test.
const char* kSchemaCsv =
    "feature_id,kind\n"
    "noise,increasing\n"
    "brightness,vshaped\n";

const char* kItemsCsv =
    "item_id,name,category,noise,brightness\n"
    "i1,quiet cafe,cafes,1.5,2.6\n"
    "i2,loud cafe,cafes,4.8,4\n";

const char* kUsersCsv =
    "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,item_id,rating\n"
    "u1,4,5,3,4,i1,4\n"
    "u1,4,5,3,4,i2,2\n";

void write_minimal(const std::filesystem::path& dir) {
  write_text(dir / "schema.csv", kSchemaCsv);
  write_text(dir / "items.csv", kItemsCsv);
  write_text(dir / "users.csv", kUsersCsv);
}

}  // namespace

TEST_CASE("csv round-trip preserves every field") {
  const TempDir dir("csv_roundtrip");
  const Dataset original = tiny_dataset();
  save_dataset_csv(original, dir.path);

  const DatasetPaths paths = locate_dataset(dir.path);
  CHECK(paths.schema.filename() == "schema.csv");
  CHECK(paths.users.filename() == "users.csv");

  const Dataset reloaded = load_dataset(dir.path);
  check_same(original, reloaded);
  CHECK(validate(reloaded).empty());
}

TEST_CASE("json round-trip preserves every field") {
  const TempDir dir("json_roundtrip");
  const Dataset original = tiny_dataset();
  save_dataset_json(original, dir.path);

  const DatasetPaths paths = locate_dataset(dir.path);
  CHECK(paths.items.filename() == "items.json");

  const Dataset reloaded = load_dataset(dir.path);
  check_same(original, reloaded);
}

TEST_CASE("formats may be mixed per file") {
  const TempDir dir("mixed");
  const Dataset original = tiny_dataset();
  save_dataset_csv(original, dir.path);
  save_dataset_json(original, dir.path);
  std::filesystem::remove(dir.path / "schema.json");
  std::filesystem::remove(dir.path / "items.csv");
  std::filesystem::remove(dir.path / "users.csv");

  const Dataset reloaded = load_dataset(dir.path);
  check_same(original, reloaded);
}

TEST_CASE("locating a dataset enforces exactly one variant per file") {
  const TempDir dir("locate");
  const Dataset original = tiny_dataset();
  save_dataset_csv(original, dir.path);
  save_dataset_json(original, dir.path);
  CHECK_THROWS_WITH_AS(locate_dataset(dir.path),
                       doctest::Contains("keep exactly one"), ParseError);

  const TempDir missing("locate_missing");
  write_text(missing.path / "schema.csv", kSchemaCsv);
  write_text(missing.path / "items.csv", kItemsCsv);
  CHECK_THROWS_WITH_AS(locate_dataset(missing.path), doctest::Contains("users"),
                       ParseError);

  CHECK_THROWS_AS(locate_dataset(dir.path / "nothing_here"), ParseError);
}

TEST_CASE("schema files accept an optional consistent v_max") {
  const TempDir dir("schema_vmax");
  write_text(dir.path / "schema.csv", kSchemaCsv);
  CHECK(load_schema(dir.path / "schema.csv").v_max == 5);

  write_text(dir.path / "wide.csv",
             "feature_id,kind,v_max\nnoise,increasing,7\nbrightness,vshaped,7\n");
  const FeatureSchema wide = load_schema(dir.path / "wide.csv");
  CHECK(wide.v_max == 7);
  REQUIRE(wide.size() == 2);
  CHECK(wide.features[1].kind == FeatureKind::VShaped);

  write_text(dir.path / "torn.csv",
             "feature_id,kind,v_max\nnoise,increasing,5\nbrightness,vshaped,7\n");
  CHECK_THROWS_WITH_AS(load_schema(dir.path / "torn.csv"),
                       doctest::Contains("v_max differs"), ParseError);
}

TEST_CASE("schema files reject unknown feature kinds") {
  const TempDir dir("schema_kind");
  write_text(dir.path / "schema.csv", "feature_id,kind\nnoise,diagonal\n");
  CHECK_THROWS_WITH_AS(load_schema(dir.path / "schema.csv"),
                       doctest::Contains("want increasing or vshaped"), ParseError);

  write_text(dir.path / "schema.json",
             R"({"v_max": 5, "features": [{"id": "noise", "kind": "sideways"}]})");
  CHECK_THROWS_WITH_AS(load_schema(dir.path / "schema.json"),
                       doctest::Contains("want increasing or vshaped"), ParseError);
}

TEST_CASE("items files must carry every schema feature") {
  const TempDir dir("items_columns");
  write_minimal(dir.path);
  write_text(dir.path / "items.csv",
             "item_id,name,category,noise\ni1,quiet cafe,cafes,1.5\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path),
                       doctest::Contains("missing column \"brightness\""),
                       ParseError);
}

TEST_CASE("items json names the offender on a missing feature") {
  const TempDir dir("items_json");
  write_minimal(dir.path);
  std::filesystem::remove(dir.path / "items.csv");
  write_text(dir.path / "items.json",
             R"({"items": [{"id": "i1", "category": "cafes",
                            "features": {"noise": 1.5}}]})");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path), doctest::Contains("brightness"),
                       ParseError);
}

TEST_CASE("unparsable numbers name their record and column") {
  const TempDir dir("bad_number");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,i1,often\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path), doctest::Contains("record 1"),
                       ParseError);
}

TEST_CASE("users files demand preference columns") {
  const TempDir dir("users_prefless");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,av_max_noise,av_min_brightness,av_max_brightness,item_id,rating\n"
             "u1,5,3,4,i1,4\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path),
                       doctest::Contains("no pref_<category> columns"), ParseError);
}

TEST_CASE("users files reject duplicate ratings") {
  const TempDir dir("users_duplicate");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,i1,4\n"
             "u1,4,5,3,4,i1,5\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path), doctest::Contains("duplicate rating"),
                       ParseError);
}

TEST_CASE("users files reject a rating without an item") {
  const TempDir dir("users_itemless");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,,4\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path),
                       doctest::Contains("rating without item_id"), ParseError);
}

TEST_CASE("repeated profile columns must agree") {
  const TempDir dir("users_torn_profile");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,i1,4\n"
             "u1,2,5,3,4,i2,2\n");
  CHECK_THROWS_WITH_AS(load_dataset(dir.path),
                       doctest::Contains("differ from record 1"), ParseError);
}

TEST_CASE("profile-only rows declare users without ratings") {
  const TempDir dir("users_profile_only");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,i1,4\n"
             "u2,2,1,1,1,,\n");
  const Dataset dataset = load_dataset(dir.path);
  REQUIRE(dataset.users.size() == 2);
  CHECK(dataset.users[1].id == "u2");
  CHECK(dataset.users[1].ratings.empty());
  CHECK(dataset.users[1].preferences.at("cafes") == 2);
}

TEST_CASE("users json derives categories and defaults the low endpoint") {
  const TempDir dir("users_json");
  write_minimal(dir.path);
  std::filesystem::remove(dir.path / "users.csv");
  write_text(dir.path / "users.json", R"({
    "users": [
      {"id": "u1",
       "preferences": {"cafes": 4},
       "aversions": {"noise": {"at_max": 5},
                     "brightness": {"at_min": 3, "at_max": 4}},
       "ratings": {"i1": 4.0, "i2": 2.0}}
    ]
  })");
  const Dataset dataset = load_dataset(dir.path);
  CHECK(dataset.categories.categories == std::vector<CategoryId>{"cafes"});
  const UserProfile& u1 = dataset.users[0];
  CHECK(u1.aversions.at("noise").at_min == 1);
  CHECK(u1.aversions.at("noise").at_max == 5);
  CHECK(u1.aversions.at("brightness").at_min == 3);
  CHECK(u1.ratings.size() == 2);
}

TEST_CASE("loading fails atomically on validation errors") {
  const TempDir dir("invalid");
  write_minimal(dir.path);
  write_text(dir.path / "users.csv",
             "user_id,pref_cafes,av_max_noise,av_min_brightness,av_max_brightness,"
             "item_id,rating\n"
             "u1,4,5,3,4,i1,7\n");
  try {
    load_dataset(dir.path);
    FAIL("expected a validation error");
  } catch (const ValidationError& error) {
    CHECK(std::string(error.what()).find("fails validation") != std::string::npos);
    REQUIRE(!error.violations().empty());
    CHECK(error.violations()[0].entity == "user u1");
  }
}

TEST_CASE("csv parser handles quoting, comments, and blank lines") {
  const csv::Table table = csv::parse(
      "# point-of-interest export\n"
      "id,name,notes\n"
      "\n"
      "1,\"quiet, tiny cafe\",\"say \"\"hi\"\"\"\n"
      "2,park,\"line one\nline two\"\n",
      "demo.csv");
  REQUIRE(table.header.size() == 3);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][1] == "quiet, tiny cafe");
  CHECK(table.rows[0][2] == "say \"hi\"");
  CHECK(table.rows[1][2] == "line one\nline two");
  CHECK(table.column("notes") == 2);
  CHECK(table.column("missing") == csv::npos);
}

TEST_CASE("csv parser rejects ragged and malformed rows") {
  CHECK_THROWS_WITH_AS(csv::parse("a,b\n1\n", "ragged.csv"),
                       doctest::Contains("expected 2 fields, got 1"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(csv::parse("a\n\"open\n", "open.csv"),
                       doctest::Contains("unterminated"), std::runtime_error);
  CHECK_THROWS_AS(csv::parse("a\nmid\"dle\n", "stray.csv"), std::runtime_error);
}

TEST_CASE("csv writer escapes what the parser unescapes") {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"",
                                        "multi\nline", ""};
  const csv::Table table =
      csv::parse("a,b,c,d,e\n" + csv::format_row(fields), "echo.csv");
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0] == fields);
}

TEST_CASE("doubles are written in shortest round-trip form") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(2.6) == "2.6");
  CHECK(csv::format_double(5.0) == "5");
  for (const double value :
       {1.0 / 3.0, 1e-9, 12345.6789, 5.0 / 7.0, 2.6, 1e300}) {
    CHECK(std::strtod(csv::format_double(value).c_str(), nullptr) == value);
  }
}
