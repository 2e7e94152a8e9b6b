#pragma once

#include "collinear/dataset.hpp"
#include "collinear/ols.hpp"
#include "collinear/remedies.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace collinear {

/// Two-sided level used to mechanize "significant" in the cause classification.
inline constexpr double kClassificationAlpha = 0.05;

struct SignDeviation {
    std::string name;
    double univariate_slope = 0.0;
    double partial_slope = 0.0;
    bool flagged = false;  ///< the two slopes have strictly opposite signs
};

/// Univariate vs partial sign comparison for every explanatory variable.
std::vector<SignDeviation> sign_expectation_deviation(const Dataset& data);
std::vector<SignDeviation> sign_expectation_deviation(const CenteredData& cd, const FitResult& fit);

/// 1 / (1 - R_j^2) with R_j^2 from x_j on the other regressors; +inf when R_j^2 >= 1 - 1e-12.
Eigen::VectorXd vif(const CenteredData& cd);

enum class CauseHint { none, sample_selection_suspected, structure_suspected, indeterminate };

std::string to_string(CauseHint hint);

struct VariableDiagnostics {
    std::string name;
    double univariate_slope = 0.0;
    double partial_slope = 0.0;
    bool sign_deviation = false;
    double t_paper = 0.0;       ///< signed, df = n - p
    double t_univariate = 0.0;  ///< signed, univariate fit with df = n - 1
    double t_star = 0.0;
    double vif = 1.0;
    double component_norm = 0.0;   ///< ||b_j x_j||
    double net_component_norm = 0.0;  ///< ||b_j v_j||, v_j = x_j on the others
};

struct GeometricNorms {
    double y_norm = 0.0;
    double fitted_norm = 0.0;
    double residual_norm = 0.0;
    /// | ||y||^2 - ||yhat||^2 - ||u||^2 | / ||y||^2
    double pythagorean_gap = 0.0;
};

struct DiagnosticsReport {
    Eigen::Index n = 0;
    Eigen::Index p = 0;
    Eigen::Index df = 0;
    std::vector<VariableDiagnostics> per_variable;
    Eigen::MatrixXd correlation_matrix;
    GeometricNorms geometric;
    double r_squared = 0.0;
    double f_stat = 0.0;
    double f_p_value = 0.0;
    bool significance_infinite = false;  ///< residual vector is exactly zero
    CauseHint classification_hint = CauseHint::none;
};

/// Full norm/t/VIF/sign report. The hint inside uses no difference-model evidence.
DiagnosticsReport geometric_report(const Dataset& data);

/** Advisory cause heuristic.
 *
 * Applied in order:
 *  - a sign deviation that also appears in the difference model, or whose
 *    partial slope is itself significant, suggests a population-structure cause;
 *  - any other sign deviation is indeterminate;
 *  - a significant univariate slope with an insignificant partial slope
 *    suggests sample selection;
 *  - otherwise none.
 * Significance is two-sided at kClassificationAlpha with df n - p (partial)
 * and n - 1 (univariate).
 */
CauseHint classify_cause(const Dataset& data, const std::optional<StructureComparison>& comparison);
CauseHint classify_cause(const DiagnosticsReport& report,
                         const std::optional<StructureComparison>& comparison);

}  // namespace collinear
