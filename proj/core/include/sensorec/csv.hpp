// Minimal CSV reader/writer with quoting, enough for the dataset files.
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace sensorec::csv {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Table {
  std::string source;  // file name, for error messages
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name, npos when absent.
  std::size_t column(std::string_view name) const;
};

Table read_file(const std::filesystem::path& path);
Table parse(std::string_view text, std::string source = "<string>");

std::string escape(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace sensorec::csv
