#pragma once

#include "collinear/decomposition.hpp"
#include "collinear/diagnostics.hpp"
#include "collinear/montecarlo.hpp"
#include "collinear/ols.hpp"
#include "collinear/remedies.hpp"

#include <json.hpp>

#include <string>

namespace collinear {

using json = nlohmann::json;

/// Decimal text with 12 significant digits; "inf", "-inf" or "nan" otherwise.
std::string format_number(double value);

/// JSON value for a double: rounded to 12 significant digits, non-finite as a string.
json number(double value);
json numbers(const Eigen::VectorXd& values);
json numbers(const std::vector<double>& values);
json matrix(const Eigen::MatrixXd& values);

/// Fit payload; `alpha` sets the confidence intervals. Residual vectors only when requested.
json to_json(const FitResult& fit, double alpha, bool include_vectors = true);
json to_json(const DiagnosticsReport& report);
json to_json(const StructureComparison& comparison);
json to_json(const RidgePath& path);
json to_json(const ExperimentResult& result);
json to_json(const TableGrid& grid);

/// Decomposition payload: B, univariate and partial slopes, effects, FWL and t* per variable.
json decomposition_payload(const CenteredData& cd);

/// JSON text with sorted keys, 2-space indent and every float printed by format_number.
std::string dump_json(const json& value);

/// Indented, key-aligned rendering that prints every number with format_number.
std::string render_text(const json& value);

/// Percent table laid out as n rows by (rho, beta1) columns.
std::string render_table_layout(const TableGrid& grid);

}  // namespace collinear
