#pragma once

#include "collinear/dataset.hpp"
#include "collinear/ols.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace collinear {

/// Observation permutation: position k holds the original index of the k-th observation.
using Ordering = std::vector<std::size_t>;

Ordering identity_ordering(std::size_t n);

/** Cumulative weights of a regressor.
 *
 * g_i = (mean - x_i) / (n * s2) with s2 = sum (x_i - mean)^2 / n, and
 * w_j = g_1 + ... + g_j for j < n. For any y in the same ordering,
 * <w, diff(y)> is the univariate slope of y on x.
 */
struct WeightVector {
    Eigen::VectorXd g;  ///< length n
    Eigen::VectorXd w;  ///< length n - 1
    double mean = 0.0;
    double variance = 0.0;  ///< divisor n
    Ordering ordering;
};

/// First differences v[k+1] - v[k] under `ordering`.
struct DifferenceVector {
    Eigen::VectorXd values;  ///< length n - 1
    Ordering ordering;
};

WeightVector cumulative_weights(const Eigen::VectorXd& x);
WeightVector cumulative_weights(const Eigen::VectorXd& x, const Ordering& ordering);

DifferenceVector difference(const Eigen::VectorXd& v);
DifferenceVector difference(const Eigen::VectorXd& v, const Ordering& ordering);

/// <w, dy>. Throws ContractError unless both were built under the same ordering.
double inner_product_slope(const WeightVector& w, const DifferenceVector& dy);

/** Pairwise univariate coefficients between regressors.
 *
 * Layout: entry(i, j) is the slope of x_j regressed on x_i, i.e.
 * <x_i, x_j> / <x_i, x_i>. Row i therefore maps the partial slopes onto the
 * univariate slope of the response on x_i. Unit diagonal.
 */
struct BMatrix {
    Eigen::MatrixXd entries;
    std::vector<std::string> names;

    Eigen::Index size() const noexcept { return entries.rows(); }
};

BMatrix b_matrix(const CenteredData& cd);

/// B * partial: the univariate slopes implied by a set of partial slopes.
Eigen::VectorXd decompose(const BMatrix& b, const Eigen::VectorXd& partial);

/// B^-1 * univariate. Throws StructuralCollinearityError if cond(B) >= 1e12.
Eigen::VectorXd recover_partials(const BMatrix& b, const Eigen::VectorXd& univariate);

/// 2-norm condition number of B.
double condition_number(const BMatrix& b);

/** Per-variable split of a univariate slope into direct and indirect effects.
 *
 * contributions(i, j) = partial_j * entry(i, j); row i sums to the univariate
 * slope on x_i, and its diagonal is the direct (partial) effect.
 */
Eigen::MatrixXd effect_contributions(const BMatrix& b, const Eigen::VectorXd& partial);

/// Residualization of the response and of regressor j on the other regressors.
struct FWLResult {
    Eigen::Index index = 0;
    Eigen::VectorXd y_resid;  ///< y on the others: beta_j * x_resid + u
    Eigen::VectorXd x_resid;  ///< x_j on the others
    Eigen::VectorXd residuals;  ///< y_resid regressed on x_resid
    double slope = 0.0;
    double t_value = 0.0;  ///< signed, df = n - p of the full model

    /// beta_j * x_resid, the net component of regressor j.
    Eigen::VectorXd net_component() const { return slope * x_resid; }
};

FWLResult fwl_residualize(const CenteredData& cd, Eigen::Index j);

/// sqrt(n - p) * ||b_j x_j|| / ||u||; +inf when the fit is exact and b_j != 0.
double t_star(const FitResult& fit, const CenteredData& cd, Eigen::Index j);

}  // namespace collinear
