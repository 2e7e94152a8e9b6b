#include "collinear/ols.hpp"

#include "collinear/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>

namespace collinear {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Householder QR of the column-equilibrated design with a singular-value rank test.
struct Factorization {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr;
    Eigen::VectorXd scale;
    Eigen::MatrixXd r_inverse;  // inverse of the p x p triangular factor

    Eigen::VectorXd solve(const Eigen::VectorXd& y) const {
        const Eigen::VectorXd scaled = qr.solve(y);
        return scaled.cwiseQuotient(scale);
    }
};

Factorization factorize(const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
    const Eigen::Index p = x.cols();
    if (x.rows() <= p) {
        throw DataError("need more observations than columns for least squares");
    }
    Factorization f;
    f.scale = x.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!(f.scale(j) > 0.0)) throw DegenerateRegressorError(names[static_cast<std::size_t>(j)]);
    }
    f.qr.compute(x * f.scale.cwiseInverse().asDiagonal());

    const Eigen::MatrixXd r = f.qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double ratio = s(p - 1) / s(0);
    if (!(ratio > kRankTolerance)) {
        const Eigen::VectorXd null_direction = svd.matrixV().col(p - 1);
        std::vector<std::string> dependent;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (std::abs(null_direction(j)) > 1e-6) dependent.push_back(names[static_cast<std::size_t>(j)]);
        }
        throw RankDeficientError(std::move(dependent), ratio);
    }
    f.r_inverse = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    return f;
}

}  // namespace

double FitResult::residual_norm() const { return std::sqrt(rss); }

double FitResult::tolerance(Eigen::Index j) const {
    const double ratio = partial_residual_norms(j) / regressor_norms(j);
    return ratio * ratio;
}

bool FitResult::slope_is_zero(Eigen::Index j) const {
    return slope_sign(slopes(j), std::sqrt(tss) / regressor_norms(j)) == 0;
}

FitResult fit_ols(const CenteredData& cd) {
    const Eigen::Index n = cd.n();
    const Eigen::Index p = cd.p();
    if (p < 1) throw DataError("at least one explanatory column is required");
    if (n <= p) throw DataError("need more observations than explanatory columns");
    for (Eigen::Index j = 0; j < p; ++j) {
        if (is_degenerate(cd.x.col(j), cd.x_scales(j))) {
            throw DegenerateRegressorError(cd.names[static_cast<std::size_t>(j)]);
        }
    }

    const Factorization f = factorize(cd.x, cd.names);

    FitResult fit;
    fit.names = cd.names;
    fit.response_name = cd.response_name;
    fit.n = n;
    fit.p = p;
    fit.df = n - p;

    fit.slopes = f.solve(cd.y);
    fit.intercept = cd.y_mean - fit.slopes.dot(cd.x_means);
    fit.fitted = cd.x * fit.slopes;
    fit.residuals = cd.y - fit.fitted;
    // Exact fit: a residual at rounding level is reported as zero.
    if (fit.residuals.norm() <= kExactFitTolerance * cd.y.norm()) fit.residuals.setZero();

    fit.tss = cd.y.squaredNorm();
    fit.ess = fit.fitted.squaredNorm();
    fit.rss = fit.residuals.squaredNorm();
    fit.r_squared = fit.tss > 0.0 ? fit.ess / fit.tss : 0.0;
    const auto df = static_cast<double>(fit.df);
    fit.sigma_sq = fit.rss / df;

    // For the equilibrated design, 1 / [(X'X)^-1]_jj = ||v_j||^2 / scale_j^2.
    fit.regressor_norms = f.scale;
    fit.partial_residual_norms.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        fit.partial_residual_norms(j) = f.scale(j) / f.r_inverse.row(j).norm();
    }

    const double u_norm = std::sqrt(fit.rss);
    fit.std_errors = std::sqrt(fit.sigma_sq) * fit.partial_residual_norms.cwiseInverse();
    fit.t_values.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double component = fit.slopes(j) * fit.partial_residual_norms(j);
        if (fit.slope_is_zero(j)) {
            fit.t_values(j) = 0.0;
        } else if (u_norm == 0.0) {
            fit.t_values(j) = std::copysign(kInf, component);
        } else {
            fit.t_values(j) = std::sqrt(df) * component / u_norm;
        }
    }
    if (fit.rss == 0.0) {
        fit.f_stat = fit.ess > 0.0 ? kInf : 0.0;
    } else {
        fit.f_stat = (fit.ess / static_cast<double>(p)) / (fit.rss / df);
    }
    return fit;
}

FitResult fit_ols(const Dataset& data) { return fit_ols(center(data)); }

double fit_univariate(const Eigen::VectorXd& x, const Eigen::VectorXd& y, const std::string& x_name) {
    if (x.size() != y.size()) throw ContractError("x and y lengths differ");
    if (x.size() < 2) throw DataError("at least two observations are required");
    const Eigen::VectorXd xc = centered(x);
    if (is_degenerate(xc, x.cwiseAbs().maxCoeff())) throw DegenerateRegressorError(x_name);
    const Eigen::VectorXd yc = centered(y);
    return xc.dot(yc) / xc.dot(xc);
}

Eigen::VectorXd univariate_slopes(const CenteredData& cd) {
    Eigen::VectorXd out(cd.p());
    for (Eigen::Index j = 0; j < cd.p(); ++j) {
        const auto& xj = cd.x.col(j);
        if (is_degenerate(xj, cd.x_scales(j))) {
            throw DegenerateRegressorError(cd.names[static_cast<std::size_t>(j)]);
        }
        out(j) = xj.dot(cd.y) / xj.squaredNorm();
    }
    return out;
}

int slope_sign(double slope, double scale) {
    if (std::abs(slope) < 1e-12 * scale || slope == 0.0) return 0;
    return slope > 0.0 ? 1 : -1;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              const std::vector<std::string>& names) {
    if (x.rows() != y.size()) throw ContractError("design and response lengths differ");
    if (static_cast<Eigen::Index>(names.size()) != x.cols()) {
        throw ContractError("one name per design column is required");
    }
    return factorize(x, names).solve(y);
}

Eigen::VectorXd residualize(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            const std::vector<std::string>& names) {
    return y - x * least_squares(x, y, names);
}

double t_critical(double alpha, double df) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (!(df > 0.0)) throw ContractError("t critical value needs positive degrees of freedom");
    boost::math::students_t dist(df);
    return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

double t_p_value(double t, double df) {
    if (std::isinf(t)) return 0.0;
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double f_p_value(double f, double df1, double df2) {
    if (std::isinf(f)) return 0.0;
    boost::math::fisher_f dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, f));
}

ConfidenceInterval confidence_interval(const FitResult& fit, Eigen::Index j, double alpha) {
    if (j < 0 || j >= fit.p) throw ContractError("coefficient index out of range");
    const double df = static_cast<double>(fit.df);
    ConfidenceInterval ci;
    ci.estimate = fit.slopes(j);
    ci.critical_value = t_critical(alpha, df);
    const double half = ci.critical_value * fit.std_errors(j);
    ci.low = ci.estimate - half;
    ci.high = ci.estimate + half;

    if (!fit.slope_is_zero(j)) {
        // ||b_j x_j|| * sqrt(1 - R_j^2) = |b_j| * ||v_j||
        const double net_component = std::abs(ci.estimate) * fit.regressor_norms(j) *
                                     std::sqrt(fit.tolerance(j));
        NormRatioForm form;
        form.relative_half_width =
            (ci.critical_value / std::sqrt(df)) * fit.residual_norm() / net_component;
        const double a = ci.estimate * (1.0 - form.relative_half_width);
        const double b = ci.estimate * (1.0 + form.relative_half_width);
        form.low = std::min(a, b);
        form.high = std::max(a, b);
        ci.factorization = form;
    }
    return ci;
}

ConventionalStatistics conventional_statistics(const FitResult& fit) {
    ConventionalStatistics out;
    out.df = fit.n - fit.p - 1;
    if (out.df < 1) return out;
    out.available = true;
    const double df = static_cast<double>(out.df);
    out.sigma_sq = fit.rss / df;
    // Same direction, different residual-variance divisor.
    out.t_values = fit.t_values * std::sqrt(df / static_cast<double>(fit.df));
    if (fit.rss == 0.0) {
        out.f_stat = fit.f_stat;
    } else {
        out.f_stat = (fit.ess / static_cast<double>(fit.p)) / out.sigma_sq;
    }
    return out;
}

}  // namespace collinear
