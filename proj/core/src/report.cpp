#include "sensorec/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "sensorec/csv.hpp"

namespace sensorec {

namespace {

std::string fmt(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::string fmt_hash(std::uint64_t hash) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

const char* const kMetricColumns[] = {"precision", "recall", "f1",      "map",
                                      "mrr",       "mae",    "rmse"};

std::vector<double> metric_values(const MetricRow& row) {
  return {row.precision, row.recall, row.f1, row.map, row.mrr, row.mae, row.rmse};
}

std::vector<double> metric_values(const FoldMetricRow& row) {
  return {row.precision, row.recall, row.f1, row.map, row.mrr, row.mae, row.rmse};
}

// Right-pads (or left-pads for numeric columns) every cell to its column
// width so the table lines up in a fixed-width font.
std::string align(const std::vector<std::vector<std::string>>& cells,
                  const std::vector<bool>& right_align) {
  std::vector<std::size_t> width(right_align.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      const std::size_t pad = width[c] - row[c].size();
      if (right_align[c]) line += std::string(pad, ' ') + row[c];
      else line += row[c] + std::string(pad, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

std::string render_csv(const EvaluationReport& report) {
  std::ostringstream out;

  out << "# configuration\n";
  out << csv::format_row({"key", "value"});
  for (const auto& [key, value] : report.config) {
    out << csv::format_row({key, value});
  }

  out << "\n# results\n";
  {
    std::vector<std::string> header = {"algorithm", "family", "measure"};
    header.insert(header.end(), std::begin(kMetricColumns),
                  std::end(kMetricColumns));
    header.push_back("coverage");
    out << csv::format_row(header);
  }
  for (const MetricRow& row : report.rows) {
    std::vector<std::string> fields = {
        row.algorithm, std::string(family_name(row.family)),
        row.measure ? std::string(measure_name(*row.measure)) : ""};
    for (const double value : metric_values(row)) fields.push_back(fmt(value, 6));
    fields.push_back(fmt(row.coverage, 6));
    out << csv::format_row(fields);
  }

  out << "\n# folds\n";
  {
    std::vector<std::string> header = {"algorithm", "fold"};
    header.insert(header.end(), std::begin(kMetricColumns),
                  std::end(kMetricColumns));
    header.push_back("coverage");
    header.push_back("test_pairs");
    header.push_back("test_pair_hash");
    out << csv::format_row(header);
  }
  for (const FoldMetricRow& row : report.fold_rows) {
    std::vector<std::string> fields = {row.algorithm, std::to_string(row.fold)};
    for (const double value : metric_values(row)) fields.push_back(fmt(value, 6));
    fields.push_back(fmt(row.coverage, 6));
    fields.push_back(std::to_string(row.test_pairs));
    fields.push_back(fmt_hash(row.test_pair_hash));
    out << csv::format_row(fields);
  }

  out << "\n# significance\n";
  out << csv::format_row({"metric", "best", "best_other_category", "t", "p",
                          "stars"});
  for (const SignificanceEntry& entry : report.significance) {
    out << csv::format_row({entry.metric, entry.best_overall,
                            entry.best_other_category, fmt(entry.t, 6),
                            fmt(entry.p, 6), entry.stars});
  }

  out << "\n# excluded_users\n";
  out << csv::format_row({"user_id", "ratings"});
  for (const auto& [user, count] : report.excluded_users) {
    out << csv::format_row({user, std::to_string(count)});
  }

  return out.str();
}

std::string render_table(const EvaluationReport& report) {
  std::ostringstream out;

  out << "== Configuration ==\n";
  {
    std::vector<std::vector<std::string>> cells;
    for (const auto& [key, value] : report.config) cells.push_back({key, value});
    out << align(cells, {false, false});
  }

  // Stars earned by the overall best algorithm, keyed by (algorithm, metric).
  std::map<std::pair<std::string, std::string>, std::string> stars;
  for (const SignificanceEntry& entry : report.significance) {
    if (!entry.stars.empty()) {
      stars[{entry.best_overall, entry.metric}] = entry.stars;
    }
  }

  out << "\n== Results (ordered by MAP, stars mark significant leads) ==\n";
  {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Algorithm", "Prec.", "Recall", "F1", "MAP", "MRR", "MAE",
                     "RMSE", "Coverage"});
    for (const MetricRow& row : report.rows) {
      std::vector<std::string> line = {row.algorithm};
      const auto values = metric_values(row);
      for (std::size_t m = 0; m < values.size(); ++m) {
        std::string cell = fmt(values[m], 4);
        const auto it = stars.find({row.algorithm, kMetricColumns[m]});
        if (it != stars.end()) cell += it->second;
        line.push_back(std::move(cell));
      }
      line.push_back(fmt(row.coverage, 4));
      cells.push_back(std::move(line));
    }
    out << align(cells, {false, true, true, true, true, true, true, true, true});
  }

  out << "\n== Significance (two-sided paired t-test over fold samples) ==\n";
  if (report.significance.empty()) {
    out << "(not computed: needs both an individualized and a baseline row)\n";
  } else {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Metric", "Best", "Best other category", "t", "p", ""});
    for (const SignificanceEntry& entry : report.significance) {
      cells.push_back({entry.metric, entry.best_overall,
                       entry.best_other_category, fmt(entry.t, 3),
                       fmt(entry.p, 4), entry.stars});
    }
    out << align(cells, {false, false, false, true, true, false});
    out << "** p < 0.01, * p < 0.05\n";
  }

  out << "\n== Per-fold detail ==\n";
  {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Algorithm", "Fold", "Prec.", "Recall", "F1", "MAP", "MRR",
                     "MAE", "RMSE", "Coverage", "Pairs", "TestHash"});
    for (const FoldMetricRow& row : report.fold_rows) {
      std::vector<std::string> line = {row.algorithm, std::to_string(row.fold)};
      for (const double value : metric_values(row)) line.push_back(fmt(value, 4));
      line.push_back(fmt(row.coverage, 4));
      line.push_back(std::to_string(row.test_pairs));
      line.push_back(fmt_hash(row.test_pair_hash));
      cells.push_back(std::move(line));
    }
    out << align(cells, {false, true, true, true, true, true, true, true, true,
                         true, true, false});
  }

  out << "\n== Excluded users (fewer ratings than folds) ==\n";
  if (report.excluded_users.empty()) {
    out << "(none)\n";
  } else {
    for (const auto& [user, count] : report.excluded_users) {
      out << user << " (" << count << (count == 1 ? " rating)" : " ratings)")
          << "\n";
    }
  }

  return out.str();
}

}  // namespace sensorec
