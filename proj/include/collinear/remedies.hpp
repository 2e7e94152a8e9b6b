#pragma once

#include "collinear/dataset.hpp"
#include "collinear/ols.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace collinear {

struct RidgePath {
    std::vector<double> lambdas;
    std::vector<Eigen::VectorXd> coefficients;
    std::vector<double> norms;
    std::vector<std::string> names;
};

/// Solves (X'X + lambda I) b = X'y on centered data for each lambda (ascending, >= 0).
RidgePath ridge_path(const CenteredData& cd, const std::vector<double>& lambdas);

/// 0 followed by `points` log-spaced values from 1e-4 to 1e4 times the mean diagonal of X'X.
std::vector<double> default_lambda_grid(const CenteredData& cd, int points = 50);

struct TransformRoundTrip {
    FitResult original;
    FitResult transformed;        ///< y on Z = X T'
    Eigen::VectorXd back_substituted;  ///< T' * (slopes on Z)
};

/// Fits y on the transformed regressors z = T x and maps the slopes back.
TransformRoundTrip linear_transform_roundtrip(const Dataset& data, const Eigen::MatrixXd& transform);

/// Rows are eigenvectors of the centered Gram matrix, largest eigenvalue first.
Eigen::MatrixXd principal_component_transform(const CenteredData& cd);

struct Elimination {
    std::string removed;
    FitResult full;
    FitResult reduced;
    double delta_r_squared = 0.0;  ///< full R^2 minus reduced R^2, never negative in exact arithmetic
    /// Remaining slopes predicted by re-decomposing the univariate slopes with the reduced B.
    Eigen::VectorXd redistributed;
};

Elimination eliminate_variable(const Dataset& data, Eigen::Index j);

/// Dataset of first differences in the given row order. Needs n >= 3.
Dataset difference_dataset(const Dataset& data);

/// OLS of the differenced response on the differenced regressors (centered).
FitResult difference_model(const Dataset& data);

struct StructureComparison {
    std::vector<std::string> names;
    Eigen::VectorXd original_partials;
    Eigen::VectorXd difference_partials;
    Eigen::VectorXd original_univariates;
    Eigen::VectorXd difference_univariates;
    double max_abs_gap = 0.0;           ///< max |original - difference| over partial slopes
    std::vector<bool> sign_agreement;   ///< partial slopes share a sign
};

StructureComparison structure_compare(const FitResult& original, const FitResult& differenced,
                                      const Dataset& data);

}  // namespace collinear
