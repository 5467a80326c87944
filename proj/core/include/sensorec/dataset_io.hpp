// Dataset ingestion and persistence. A dataset directory holds three files
// (schema, items, users), each CSV or JSON, auto-detected by extension; the
// column and key names are documented in docs/data-format.md.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensorec/domain.hpp"

namespace sensorec {

// Malformed file: bad syntax, missing column, unparsable value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally parsable but violates the dataset invariants.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string message, std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct DatasetPaths {
  std::filesystem::path schema;
  std::filesystem::path items;
  std::filesystem::path users;
};

// Finds schema/items/users with .csv or .json extension inside a directory.
// Exactly one variant per file may exist.
DatasetPaths locate_dataset(const std::filesystem::path& directory);

// Loads and validates; throws ParseError or ValidationError, never returns
// a partially built dataset.
Dataset load_dataset(const DatasetPaths& paths);
Dataset load_dataset(const std::filesystem::path& directory);

// Just the schema file (.csv or .json), for standalone schema overrides.
FeatureSchema load_schema(const std::filesystem::path& path);

void save_dataset_csv(const Dataset& dataset, const std::filesystem::path& directory);
void save_dataset_json(const Dataset& dataset, const std::filesystem::path& directory);

}  // namespace sensorec
