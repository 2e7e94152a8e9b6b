#pragma once

#include "collinear/dataset.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace collinear {

/// Relative singular-value cutoff on the column-equilibrated centered design.
inline constexpr double kRankTolerance = 1e-10;

/// Residual norms at or below this fraction of ||y|| count as an exact fit.
inline constexpr double kExactFitTolerance = 1e-12;

/** One centered OLS fit.
 *
 * Statistics use df = n - p: the intercept is absorbed by centering and is
 * not counted. `conventional_statistics()` gives the n - p - 1 variants.
 * `t_values` carry the sign of the slope; their magnitude is
 * sqrt(n - p) * |slope_j| * ||v_j|| / ||u||, where v_j is the residual of
 * x_j on the other regressors.
 */
struct FitResult {
    std::vector<std::string> names;
    std::string response_name;

    Eigen::VectorXd slopes;
    double intercept = 0.0;
    Eigen::VectorXd fitted;     ///< centered fitted vector; add the response mean for raw scale
    Eigen::VectorXd residuals;

    double tss = 0.0;  ///< ||y||^2 of the centered response
    double ess = 0.0;
    double rss = 0.0;
    double r_squared = 0.0;
    double sigma_sq = 0.0;

    Eigen::VectorXd t_values;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd regressor_norms;           ///< ||x_j||
    Eigen::VectorXd partial_residual_norms;    ///< ||v_j||
    double f_stat = 0.0;

    Eigen::Index n = 0;
    Eigen::Index p = 0;
    Eigen::Index df = 0;

    double residual_norm() const;
    /// 1 - R^2 of x_j regressed on the remaining regressors.
    double tolerance(Eigen::Index j) const;
    /// Slope j is zero up to rounding at the natural scale ||y|| / ||x_j||.
    bool slope_is_zero(Eigen::Index j) const;
};

FitResult fit_ols(const CenteredData& cd);
FitResult fit_ols(const Dataset& data);

/// Slope of y on x alone, on centered data. Throws DegenerateRegressorError for constant x.
double fit_univariate(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                      const std::string& x_name = "x");

/// Univariate slope of the response on each explanatory column.
Eigen::VectorXd univariate_slopes(const CenteredData& cd);

/** Sign of a slope as -1, 0 or +1.
 *
 * |slope| < 1e-12 * scale counts as zero; pass the natural slope scale
 * ||y|| / ||x|| for the variables involved.
 */
int slope_sign(double slope, double scale);

/** Least-squares coefficients of `y` on the columns of `x`, used as given.
 *
 * Columns are equilibrated before the rank test; a singular-value ratio at or
 * below kRankTolerance raises RankDeficientError naming the involved columns.
 */
Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              const std::vector<std::string>& names);

/// Residual of `y` after projecting on the columns of `x`.
Eigen::VectorXd residualize(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            const std::vector<std::string>& names);

/// Upper alpha/2 quantile of Student's t with `df` degrees of freedom.
double t_critical(double alpha, double df);
/// Two-sided p-value for |t| with `df` degrees of freedom.
double t_p_value(double t, double df);
/// Upper-tail p-value of F(df1, df2).
double f_p_value(double f, double df1, double df2);

struct NormRatioForm {
    /// (t_crit / sqrt(df)) * ||u|| / (||b_j x_j|| * sqrt(1 - R_j^2))
    double relative_half_width = 0.0;
    double low = 0.0;
    double high = 0.0;
};

struct ConfidenceInterval {
    double estimate = 0.0;
    double low = 0.0;
    double high = 0.0;
    double critical_value = 0.0;
    /// Multiplicative form b_j * (1 -/+ h); absent when the slope is exactly zero.
    std::optional<NormRatioForm> factorization;
};

ConfidenceInterval confidence_interval(const FitResult& fit, Eigen::Index j, double alpha);

/// Statistics under the usual intercept-counting convention, df = n - p - 1.
struct ConventionalStatistics {
    bool available = false;  ///< false when n - p - 1 < 1
    Eigen::Index df = 0;
    double sigma_sq = 0.0;
    Eigen::VectorXd t_values;
    double f_stat = 0.0;
};

ConventionalStatistics conventional_statistics(const FitResult& fit);

}  // namespace collinear
