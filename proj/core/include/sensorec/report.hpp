// Rendering of evaluation reports as CSV and as an aligned text table.
#pragma once

#include <string>

#include "sensorec/evaluation.hpp"

namespace sensorec {

// Multi-section CSV: config header, per-algorithm results ordered by MAP,
// per-fold detail, significance and excluded users. Deterministic bytes.
std::string render_csv(const EvaluationReport& report);

// Aligned table in the column order Prec. Recall F1 MAP MRR MAE RMSE with
// stars on significant best-of-category values, plus legend sections.
std::string render_table(const EvaluationReport& report);

}  // namespace sensorec
