#include "collinear/diagnostics.hpp"

#include "collinear/decomposition.hpp"
#include "collinear/errors.hpp"

#include <cmath>
#include <limits>

namespace collinear {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slope_scale(const CenteredData& cd, Eigen::Index j) {
    return cd.y.norm() / cd.x.col(j).norm();
}

Eigen::MatrixXd others_of(const Eigen::MatrixXd& x, Eigen::Index j) {
    Eigen::MatrixXd out(x.rows(), x.cols() - 1);
    for (Eigen::Index k = 0, c = 0; k < x.cols(); ++k) {
        if (k != j) out.col(c++) = x.col(k);
    }
    return out;
}

std::vector<std::string> names_of_others(const std::vector<std::string>& names, Eigen::Index j) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (static_cast<Eigen::Index>(k) != j) out.push_back(names[k]);
    }
    return out;
}

double signed_ratio_t(double df, double component, double residual_norm) {
    if (component == 0.0) return 0.0;
    if (residual_norm == 0.0) return std::copysign(kInf, component);
    return std::sqrt(df) * component / residual_norm;
}

bool significant(double t, double df) {
    return std::abs(t) > t_critical(kClassificationAlpha, df);
}

}  // namespace

std::vector<SignDeviation> sign_expectation_deviation(const CenteredData& cd, const FitResult& fit) {
    const Eigen::VectorXd univariate = univariate_slopes(cd);
    std::vector<SignDeviation> out;
    for (Eigen::Index j = 0; j < cd.p(); ++j) {
        SignDeviation d;
        d.name = cd.names[static_cast<std::size_t>(j)];
        d.univariate_slope = univariate(j);
        d.partial_slope = fit.slopes(j);
        const double scale = slope_scale(cd, j);
        d.flagged = slope_sign(d.univariate_slope, scale) * slope_sign(d.partial_slope, scale) < 0;
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<SignDeviation> sign_expectation_deviation(const Dataset& data) {
    const CenteredData cd = center(data);
    return sign_expectation_deviation(cd, fit_ols(cd));
}

Eigen::VectorXd vif(const CenteredData& cd) {
    const Eigen::Index p = cd.p();
    Eigen::VectorXd out = Eigen::VectorXd::Ones(p);
    if (p < 2) return out;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (is_degenerate(cd.x.col(j), cd.x_scales(j))) {
            throw DegenerateRegressorError(cd.names[static_cast<std::size_t>(j)]);
        }
        const Eigen::VectorXd resid =
            residualize(others_of(cd.x, j), cd.x.col(j), names_of_others(cd.names, j));
        const double r2 = 1.0 - resid.squaredNorm() / cd.x.col(j).squaredNorm();
        out(j) = r2 >= 1.0 - 1e-12 ? kInf : 1.0 / (1.0 - r2);
    }
    return out;
}

std::string to_string(CauseHint hint) {
    switch (hint) {
        case CauseHint::none: return "none";
        case CauseHint::sample_selection_suspected: return "sample_selection_suspected";
        case CauseHint::structure_suspected: return "structure_suspected";
        case CauseHint::indeterminate: return "indeterminate";
    }
    return "none";
}

DiagnosticsReport geometric_report(const Dataset& data) {
    const CenteredData cd = center(data);
    const FitResult fit = fit_ols(cd);
    const Eigen::Index n = cd.n();
    const Eigen::Index p = cd.p();

    DiagnosticsReport r;
    r.n = n;
    r.p = p;
    r.df = fit.df;
    r.r_squared = fit.r_squared;
    r.f_stat = fit.f_stat;
    r.f_p_value = f_p_value(fit.f_stat, static_cast<double>(p), static_cast<double>(fit.df));
    r.significance_infinite = fit.rss == 0.0;

    r.geometric.y_norm = cd.y.norm();
    r.geometric.fitted_norm = fit.fitted.norm();
    r.geometric.residual_norm = fit.residual_norm();
    r.geometric.pythagorean_gap =
        fit.tss > 0.0 ? std::abs(fit.tss - fit.ess - fit.rss) / fit.tss : 0.0;

    const Eigen::MatrixXd gram = cd.x.transpose() * cd.x;
    const Eigen::VectorXd norms = gram.diagonal().cwiseSqrt();
    r.correlation_matrix = norms.cwiseInverse().asDiagonal() * gram * norms.cwiseInverse().asDiagonal();

    const auto deviations = sign_expectation_deviation(cd, fit);
    const Eigen::VectorXd vifs = vif(cd);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto& dev = deviations[static_cast<std::size_t>(j)];
        VariableDiagnostics v;
        v.name = dev.name;
        v.univariate_slope = dev.univariate_slope;
        v.partial_slope = dev.partial_slope;
        v.sign_deviation = dev.flagged;
        v.t_paper = fit.t_values(j);
        v.t_star = t_star(fit, cd, j);
        v.vif = vifs(j);
        v.component_norm = std::abs(fit.slopes(j)) * norms(j);
        v.net_component_norm = std::abs(fit.slopes(j)) * fit.partial_residual_norms(j);

        const double u_uni = (cd.y - v.univariate_slope * cd.x.col(j)).norm();
        v.t_univariate = signed_ratio_t(static_cast<double>(n - 1), v.univariate_slope * norms(j), u_uni);
        r.per_variable.push_back(std::move(v));
    }
    r.classification_hint = classify_cause(r, std::nullopt);
    return r;
}

CauseHint classify_cause(const DiagnosticsReport& report,
                         const std::optional<StructureComparison>& comparison) {
    const double df_partial = static_cast<double>(report.df);
    const double df_univariate = static_cast<double>(report.n - 1);

    bool any_deviation = false;
    bool structure = false;
    bool selection = false;
    for (std::size_t j = 0; j < report.per_variable.size(); ++j) {
        const VariableDiagnostics& v = report.per_variable[j];
        if (v.sign_deviation) {
            any_deviation = true;
            if (comparison) {
                const double u = comparison->difference_univariates(static_cast<Eigen::Index>(j));
                const double b = comparison->difference_partials(static_cast<Eigen::Index>(j));
                if (u * b < 0.0) structure = true;
            }
            if (significant(v.t_paper, df_partial)) structure = true;
        } else if (significant(v.t_univariate, df_univariate) && !significant(v.t_paper, df_partial)) {
            selection = true;
        }
    }
    if (structure) return CauseHint::structure_suspected;
    if (any_deviation) return CauseHint::indeterminate;
    if (selection) return CauseHint::sample_selection_suspected;
    return CauseHint::none;
}

CauseHint classify_cause(const Dataset& data, const std::optional<StructureComparison>& comparison) {
    if (comparison && comparison->names != data.explanatory_names()) {
        throw ContractError("structure comparison covers different variables");
    }
    return classify_cause(geometric_report(data), comparison);
}

}  // namespace collinear
