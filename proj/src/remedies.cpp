#include "collinear/remedies.hpp"

#include "collinear/decomposition.hpp"
#include "collinear/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace collinear {

namespace {

double slope_scale(const CenteredData& cd, Eigen::Index j) {
    return cd.y.norm() / cd.x.col(j).norm();
}

}  // namespace

RidgePath ridge_path(const CenteredData& cd, const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw ConfigError("ridge grid is empty");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!std::isfinite(lambdas[k]) || lambdas[k] < 0.0) {
            throw ConfigError("ridge penalties must be finite and non-negative");
        }
        if (k > 0 && lambdas[k] < lambdas[k - 1]) throw ConfigError("ridge grid must be ascending");
    }

    // x = U S V'  =>  b(lambda) = V diag(s / (s^2 + lambda)) U'y
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cd.x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const Eigen::VectorXd projected = svd.matrixU().transpose() * cd.y;

    RidgePath path;
    path.names = cd.names;
    path.lambdas = lambdas;
    for (double lambda : lambdas) {
        Eigen::VectorXd beta;
        if (lambda == 0.0) {
            beta = fit_ols(cd).slopes;
        } else {
            const Eigen::VectorXd shrink = s.array() / (s.array().square() + lambda);
            beta = svd.matrixV() * shrink.cwiseProduct(projected);
        }
        path.norms.push_back(beta.norm());
        path.coefficients.push_back(std::move(beta));
    }
    return path;
}

std::vector<double> default_lambda_grid(const CenteredData& cd, int points) {
    if (points < 2) throw ConfigError("ridge grid needs at least two points");
    const double base = cd.x.colwise().squaredNorm().mean();
    std::vector<double> grid{0.0};
    const double lo = std::log10(1e-4 * base);
    const double hi = std::log10(1e4 * base);
    for (int k = 0; k < points; ++k) {
        grid.push_back(std::pow(10.0, lo + (hi - lo) * k / (points - 1)));
    }
    return grid;
}

TransformRoundTrip linear_transform_roundtrip(const Dataset& data, const Eigen::MatrixXd& transform) {
    const CenteredData cd = center(data);
    const Eigen::Index p = cd.p();
    if (transform.rows() != p || transform.cols() != p) {
        throw ContractError("transform must be p x p");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(transform);
    const Eigen::VectorXd& s = svd.singularValues();
    if (!(s(p - 1) > 0.0) || !(s(0) / s(p - 1) < 1e12)) {
        throw Error(ErrorKind::numerical, "singular_transform",
                    "linear transform is singular or too ill-conditioned to invert");
    }

    TransformRoundTrip out;
    out.original = fit_ols(cd);

    std::vector<std::string> z_names;
    for (Eigen::Index k = 0; k < p; ++k) z_names.push_back("z" + std::to_string(k + 1));
    // Rebuild from raw columns so intercepts agree as well.
    Eigen::MatrixXd raw = cd.x.rowwise() + cd.x_means.transpose();
    const Eigen::VectorXd y_raw = (cd.y.array() + cd.y_mean).matrix();
    const Eigen::MatrixXd z = raw * transform.transpose();
    out.transformed = fit_ols(center(z, y_raw, std::move(z_names), cd.response_name));
    out.back_substituted = transform.transpose() * out.transformed.slopes;
    return out;
}

Eigen::MatrixXd principal_component_transform(const CenteredData& cd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cd.x.transpose() * cd.x);
    // Eigen sorts ascending; reverse so the leading component comes first.
    return eig.eigenvectors().rowwise().reverse().transpose();
}

Elimination eliminate_variable(const Dataset& data, Eigen::Index j) {
    const auto names = data.explanatory_names();
    const auto p = static_cast<Eigen::Index>(names.size());
    if (p < 2) throw ContractError("elimination needs at least two explanatory variables");
    if (j < 0 || j >= p) throw ContractError("regressor index out of range");

    const CenteredData cd = center(data);
    Elimination out;
    out.removed = names[static_cast<std::size_t>(j)];
    out.full = fit_ols(cd);
    out.reduced = fit_ols(data.without(out.removed));
    out.delta_r_squared = out.full.r_squared - out.reduced.r_squared;

    const BMatrix b = b_matrix(cd);
    const Eigen::VectorXd univariate = univariate_slopes(cd);
    BMatrix sub;
    sub.entries.resize(p - 1, p - 1);
    Eigen::VectorXd sub_univariate(p - 1);
    for (Eigen::Index r = 0, rr = 0; r < p; ++r) {
        if (r == j) continue;
        sub.names.push_back(names[static_cast<std::size_t>(r)]);
        sub_univariate(rr) = univariate(r);
        for (Eigen::Index c = 0, cc = 0; c < p; ++c) {
            if (c == j) continue;
            sub.entries(rr, cc++) = b.entries(r, c);
        }
        ++rr;
    }
    out.redistributed = recover_partials(sub, sub_univariate);
    return out;
}

Dataset difference_dataset(const Dataset& data) {
    if (data.n() < 3) throw DataError("difference model needs at least three observations");
    if (data.n() - 1 <= data.p()) {
        throw DataError("insufficient differenced sample: " + std::to_string(data.n() - 1) +
                        " differences for " + std::to_string(data.p()) + " regressors");
    }
    std::vector<Column> diffs;
    for (const Column& col : data.columns()) {
        Column d{col.name, {}};
        d.values.reserve(col.values.size() - 1);
        for (std::size_t i = 1; i < col.values.size(); ++i) {
            d.values.push_back(col.values[i] - col.values[i - 1]);
        }
        diffs.push_back(std::move(d));
    }
    return Dataset(std::move(diffs), data.response_name());
}

FitResult difference_model(const Dataset& data) {
    return fit_ols(center(difference_dataset(data)));
}

StructureComparison structure_compare(const FitResult& original, const FitResult& differenced,
                                      const Dataset& data) {
    const auto names = data.explanatory_names();
    if (original.names != names || differenced.names != names) {
        throw ContractError("fits do not cover the same explanatory variables as the data");
    }
    const CenteredData cd = center(data);
    const CenteredData dd = center(difference_dataset(data));

    StructureComparison out;
    out.names = names;
    out.original_partials = original.slopes;
    out.difference_partials = differenced.slopes;
    out.original_univariates = univariate_slopes(cd);
    out.difference_univariates = univariate_slopes(dd);
    out.max_abs_gap = (original.slopes - differenced.slopes).cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < cd.p(); ++j) {
        out.sign_agreement.push_back(slope_sign(original.slopes(j), slope_scale(cd, j)) ==
                                     slope_sign(differenced.slopes(j), slope_scale(dd, j)));
    }
    return out;
}

}  // namespace collinear
