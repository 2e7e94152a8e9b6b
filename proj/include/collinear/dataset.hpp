#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace collinear {

struct Column {
    std::string name;
    std::vector<double> values;
};

/** Named numeric columns, one of which is the response.
 *
 * Every other column is an explanatory variable, in the order given.
 * Construction validates: at least two observations, equal column lengths,
 * unique names, an existing response column and finite values throughout.
 */
class Dataset {
public:
    Dataset(std::vector<Column> columns, std::string response);

    std::size_t n() const noexcept { return n_; }
    /// Number of explanatory columns.
    std::size_t p() const noexcept { return columns_.size() - 1; }

    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::string& response_name() const noexcept { return response_; }
    const Column& response() const { return columns_[response_index_]; }
    const Column& column(const std::string& name) const;

    /// Explanatory column names, in file order.
    std::vector<std::string> explanatory_names() const;
    /// Explanatory columns, in file order.
    std::vector<const Column*> explanatory() const;

    /// Same data with explanatory column `name` removed.
    Dataset without(const std::string& name) const;
    /// Dataset whose rows are `rows` of this one (indices may repeat).
    Dataset select_rows(const std::vector<std::size_t>& rows) const;

private:
    std::vector<Column> columns_;
    std::string response_;
    std::size_t response_index_ = 0;
    std::size_t n_ = 0;
};

/// Mean-removed response and design; the geometry every fit works in.
struct CenteredData {
    Eigen::VectorXd y;
    Eigen::MatrixXd x;  ///< n x p, one centered regressor per column
    double y_mean = 0.0;
    Eigen::VectorXd x_means;
    Eigen::VectorXd x_scales;  ///< largest |value| of each raw column
    std::vector<std::string> names;  ///< explanatory names, size p
    std::string response_name;

    Eigen::Index n() const noexcept { return y.size(); }
    Eigen::Index p() const noexcept { return x.cols(); }
};

/// Subtracts column means. Requires p >= 1 and n > p.
CenteredData center(const Dataset& data);

/// Centers raw arrays directly; `x` is n x p with one variable per column.
CenteredData center(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    std::vector<std::string> names, std::string response_name = "y");

/// Mean-removed copy of a single vector.
Eigen::VectorXd centered(const Eigen::VectorXd& v);

/** True when a centered vector is zero relative to its uncentered scale.
 *
 * Tolerance is 1e-12 of the largest magnitude in the original column
 * times sqrt(n).
 */
bool is_degenerate(const Eigen::VectorXd& centered_values, double original_scale);

}  // namespace collinear
