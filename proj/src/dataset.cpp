#include "collinear/dataset.hpp"

#include "collinear/errors.hpp"

#include <cmath>
#include <set>

namespace collinear {

Dataset::Dataset(std::vector<Column> columns, std::string response)
    : columns_(std::move(columns)), response_(std::move(response)) {
    if (columns_.empty()) throw DataError("dataset has no columns");

    std::set<std::string> seen;
    bool found = false;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        const Column& col = columns_[c];
        if (!seen.insert(col.name).second) {
            throw DataError("duplicate column name '" + col.name + "'");
        }
        if (col.name == response_) {
            response_index_ = c;
            found = true;
        }
    }
    if (!found) throw DataError("response column '" + response_ + "' not found");

    n_ = columns_.front().values.size();
    for (const Column& col : columns_) {
        if (col.values.size() != n_) {
            throw DataError("column '" + col.name + "' has " + std::to_string(col.values.size()) +
                            " values, expected " + std::to_string(n_));
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (!std::isfinite(col.values[i])) {
                throw DataError("non-finite value in column '" + col.name + "' at observation " +
                                std::to_string(i + 1));
            }
        }
    }
    if (n_ < 2) throw DataError("at least two observations are required");
}

const Column& Dataset::column(const std::string& name) const {
    for (const Column& col : columns_) {
        if (col.name == name) return col;
    }
    throw DataError("no column named '" + name + "'");
}

std::vector<std::string> Dataset::explanatory_names() const {
    std::vector<std::string> names;
    for (const Column* col : explanatory()) names.push_back(col->name);
    return names;
}

std::vector<const Column*> Dataset::explanatory() const {
    std::vector<const Column*> out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c != response_index_) out.push_back(&columns_[c]);
    }
    return out;
}

Dataset Dataset::without(const std::string& name) const {
    if (name == response_) throw ContractError("cannot remove the response column");
    std::vector<Column> kept;
    bool removed = false;
    for (const Column& col : columns_) {
        if (col.name == name) {
            removed = true;
            continue;
        }
        kept.push_back(col);
    }
    if (!removed) throw DataError("no column named '" + name + "'");
    return Dataset(std::move(kept), response_);
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& rows) const {
    std::vector<Column> out;
    out.reserve(columns_.size());
    for (const Column& col : columns_) {
        Column copy{col.name, {}};
        copy.values.reserve(rows.size());
        for (std::size_t r : rows) {
            if (r >= n_) throw ContractError("row index out of range");
            copy.values.push_back(col.values[r]);
        }
        out.push_back(std::move(copy));
    }
    return Dataset(std::move(out), response_);
}

Eigen::VectorXd centered(const Eigen::VectorXd& v) {
    return (v.array() - v.mean()).matrix();
}

bool is_degenerate(const Eigen::VectorXd& centered_values, double original_scale) {
    const double n = static_cast<double>(centered_values.size());
    return centered_values.norm() <= 1e-12 * original_scale * std::sqrt(n);
}

CenteredData center(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    std::vector<std::string> names, std::string response_name) {
    const Eigen::Index n = y.size();
    const Eigen::Index p = x.cols();
    if (x.rows() != n) throw ContractError("design and response lengths differ");
    if (static_cast<Eigen::Index>(names.size()) != p) {
        throw ContractError("one name per design column is required");
    }
    if (n < 2) throw DataError("at least two observations are required");
    if (p < 1) throw DataError("at least one explanatory column is required");
    if (n <= p) {
        throw DataError("need more observations (" + std::to_string(n) +
                        ") than explanatory columns (" + std::to_string(p) + ")");
    }
    if (!y.allFinite()) throw DataError("non-finite value in column '" + response_name + "'");
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!x.col(j).allFinite()) {
            throw DataError("non-finite value in column '" + names[static_cast<std::size_t>(j)] + "'");
        }
    }

    CenteredData cd;
    cd.y_mean = y.mean();
    cd.y = (y.array() - cd.y_mean).matrix();
    cd.x_means = x.colwise().mean().transpose();
    cd.x = x.rowwise() - cd.x_means.transpose();
    cd.x_scales = x.cwiseAbs().colwise().maxCoeff().transpose();
    cd.names = std::move(names);
    cd.response_name = std::move(response_name);
    return cd;
}

CenteredData center(const Dataset& data) {
    const auto regressors = data.explanatory();
    const auto n = static_cast<Eigen::Index>(data.n());
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        x.col(static_cast<Eigen::Index>(j)) =
            Eigen::Map<const Eigen::VectorXd>(regressors[j]->values.data(), n);
    }
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(data.response().values.data(), n);
    return center(x, y, data.explanatory_names(), data.response_name());
}

}  // namespace collinear
