#include "collinear/decomposition.hpp"

#include "collinear/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numeric>

namespace collinear {

namespace {

void check_ordering(const Ordering& ordering, Eigen::Index n) {
    if (static_cast<Eigen::Index>(ordering.size()) != n) {
        throw ContractError("ordering length does not match the vector length");
    }
    std::vector<bool> seen(ordering.size(), false);
    for (std::size_t k : ordering) {
        if (k >= ordering.size() || seen[k]) throw ContractError("ordering is not a permutation");
        seen[k] = true;
    }
}

Eigen::VectorXd permuted(const Eigen::VectorXd& v, const Ordering& ordering) {
    Eigen::VectorXd out(v.size());
    for (std::size_t k = 0; k < ordering.size(); ++k) {
        out(static_cast<Eigen::Index>(k)) = v(static_cast<Eigen::Index>(ordering[k]));
    }
    return out;
}

std::vector<std::string> names_without(const std::vector<std::string>& names, Eigen::Index j) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (static_cast<Eigen::Index>(k) != j) out.push_back(names[k]);
    }
    return out;
}

Eigen::MatrixXd columns_without(const Eigen::MatrixXd& x, Eigen::Index j) {
    Eigen::MatrixXd out(x.rows(), x.cols() - 1);
    for (Eigen::Index k = 0, c = 0; k < x.cols(); ++k) {
        if (k != j) out.col(c++) = x.col(k);
    }
    return out;
}

}  // namespace

Ordering identity_ordering(std::size_t n) {
    Ordering out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

WeightVector cumulative_weights(const Eigen::VectorXd& x) {
    return cumulative_weights(x, identity_ordering(static_cast<std::size_t>(x.size())));
}

WeightVector cumulative_weights(const Eigen::VectorXd& x, const Ordering& ordering) {
    const Eigen::Index n = x.size();
    if (n < 2) throw DataError("cumulative weights need at least two observations");
    check_ordering(ordering, n);

    const Eigen::VectorXd xs = permuted(x, ordering);
    WeightVector wv;
    wv.mean = xs.mean();
    const Eigen::VectorXd dev = (xs.array() - wv.mean).matrix();
    if (is_degenerate(dev, xs.cwiseAbs().maxCoeff())) throw DegenerateRegressorError("x");
    wv.variance = dev.squaredNorm() / static_cast<double>(n);
    wv.g = -dev / (static_cast<double>(n) * wv.variance);

    wv.w.resize(n - 1);
    double running = 0.0;
    for (Eigen::Index j = 0; j < n - 1; ++j) {
        running += wv.g(j);
        wv.w(j) = running;
    }
    wv.ordering = ordering;
    return wv;
}

DifferenceVector difference(const Eigen::VectorXd& v) {
    return difference(v, identity_ordering(static_cast<std::size_t>(v.size())));
}

DifferenceVector difference(const Eigen::VectorXd& v, const Ordering& ordering) {
    const Eigen::Index n = v.size();
    if (n < 2) throw DataError("differencing needs at least two observations");
    check_ordering(ordering, n);
    const Eigen::VectorXd vs = permuted(v, ordering);
    DifferenceVector out;
    out.values = vs.tail(n - 1) - vs.head(n - 1);
    out.ordering = ordering;
    return out;
}

double inner_product_slope(const WeightVector& w, const DifferenceVector& dy) {
    if (w.ordering != dy.ordering) {
        throw ContractError("weight and difference vectors were built under different orderings");
    }
    if (w.w.size() != dy.values.size()) throw ContractError("weight and difference lengths differ");
    return w.w.dot(dy.values);
}

BMatrix b_matrix(const CenteredData& cd) {
    const Eigen::Index p = cd.p();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (is_degenerate(cd.x.col(j), cd.x_scales(j))) {
            throw DegenerateRegressorError(cd.names[static_cast<std::size_t>(j)]);
        }
    }
    const Eigen::MatrixXd gram = cd.x.transpose() * cd.x;
    BMatrix b;
    b.names = cd.names;
    b.entries.resize(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) {
            b.entries(i, j) = i == j ? 1.0 : gram(i, j) / gram(i, i);
        }
    }
    return b;
}

Eigen::VectorXd decompose(const BMatrix& b, const Eigen::VectorXd& partial) {
    if (partial.size() != b.size()) throw ContractError("B and slope vector dimensions differ");
    return b.entries * partial;
}

double condition_number(const BMatrix& b) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.entries);
    const Eigen::VectorXd& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smallest;
}

Eigen::VectorXd recover_partials(const BMatrix& b, const Eigen::VectorXd& univariate) {
    if (univariate.size() != b.size()) throw ContractError("B and slope vector dimensions differ");
    const double cond = condition_number(b);
    if (!(cond < 1e12)) throw StructuralCollinearityError(cond);
    return b.entries.fullPivLu().solve(univariate);
}

Eigen::MatrixXd effect_contributions(const BMatrix& b, const Eigen::VectorXd& partial) {
    if (partial.size() != b.size()) throw ContractError("B and slope vector dimensions differ");
    return b.entries * partial.asDiagonal();
}

FWLResult fwl_residualize(const CenteredData& cd, Eigen::Index j) {
    const Eigen::Index p = cd.p();
    if (p < 2) throw ContractError("FWL residualization needs at least two regressors; use the univariate fit");
    if (j < 0 || j >= p) throw ContractError("regressor index out of range");
    if (is_degenerate(cd.x.col(j), cd.x_scales(j))) {
        throw DegenerateRegressorError(cd.names[static_cast<std::size_t>(j)]);
    }

    const Eigen::MatrixXd others = columns_without(cd.x, j);
    const std::vector<std::string> other_names = names_without(cd.names, j);

    FWLResult r;
    r.index = j;
    r.y_resid = residualize(others, cd.y, other_names);
    r.x_resid = residualize(others, cd.x.col(j), other_names);
    const double xx = r.x_resid.squaredNorm();
    // The full-rank test inside least_squares does not see x_j itself.
    if (!(std::sqrt(xx) > kRankTolerance * cd.x.col(j).norm())) {
        std::vector<std::string> all = cd.names;
        throw RankDeficientError(std::move(all), std::sqrt(xx) / cd.x.col(j).norm());
    }
    r.slope = r.x_resid.dot(r.y_resid) / xx;
    r.residuals = r.y_resid - r.slope * r.x_resid;

    const double net = r.slope * std::sqrt(xx);
    const double u = r.residuals.norm();
    const double df = static_cast<double>(cd.n() - p);
    if (net == 0.0) {
        r.t_value = 0.0;
    } else if (u == 0.0) {
        r.t_value = std::copysign(std::numeric_limits<double>::infinity(), net);
    } else {
        r.t_value = std::sqrt(df) * net / u;
    }
    return r;
}

double t_star(const FitResult& fit, const CenteredData& cd, Eigen::Index j) {
    if (j < 0 || j >= fit.p) throw ContractError("coefficient index out of range");
    if (cd.p() != fit.p || cd.n() != fit.n) throw ContractError("fit and data dimensions differ");
    const double component = std::abs(fit.slopes(j)) * cd.x.col(j).norm();
    if (fit.slope_is_zero(j)) return 0.0;
    const double u = fit.residual_norm();
    if (u == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(static_cast<double>(fit.df)) * component / u;
}

}  // namespace collinear
