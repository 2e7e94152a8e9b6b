#include "collinear/report.hpp"

#include "collinear/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace collinear {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

json number(double value) {
    if (!std::isfinite(value)) return format_number(value);
    const double rounded = std::strtod(format_number(value).c_str(), nullptr);
    return rounded == 0.0 ? 0.0 : rounded;  // no negative zero in output
}

json numbers(const Eigen::VectorXd& values) {
    json out = json::array();
    for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(number(values(i)));
    return out;
}

json numbers(const std::vector<double>& values) {
    json out = json::array();
    for (double v : values) out.push_back(number(v));
    return out;
}

json matrix(const Eigen::MatrixXd& values) {
    json out = json::array();
    for (Eigen::Index r = 0; r < values.rows(); ++r) out.push_back(numbers(Eigen::VectorXd(values.row(r).transpose())));
    return out;
}

json to_json(const FitResult& fit, double alpha, bool include_vectors) {
    json j;
    j["names"] = fit.names;
    j["response"] = fit.response_name;
    j["n"] = fit.n;
    j["p"] = fit.p;
    j["df"] = fit.df;
    j["slopes"] = numbers(fit.slopes);
    j["intercept"] = number(fit.intercept);
    j["std_errors"] = numbers(fit.std_errors);
    j["t_values"] = numbers(fit.t_values);
    json p_values = json::array();
    for (Eigen::Index k = 0; k < fit.p; ++k) {
        p_values.push_back(number(t_p_value(fit.t_values(k), static_cast<double>(fit.df))));
    }
    j["t_p_values"] = p_values;
    j["tss"] = number(fit.tss);
    j["ess"] = number(fit.ess);
    j["rss"] = number(fit.rss);
    j["r_squared"] = number(fit.r_squared);
    j["sigma_sq"] = number(fit.sigma_sq);
    j["f_stat"] = number(fit.f_stat);
    j["f_p_value"] = number(f_p_value(fit.f_stat, static_cast<double>(fit.p), static_cast<double>(fit.df)));
    j["significance_infinite"] = fit.rss == 0.0;

    j["alpha"] = number(alpha);
    json intervals = json::array();
    for (Eigen::Index k = 0; k < fit.p; ++k) {
        const ConfidenceInterval ci = confidence_interval(fit, k, alpha);
        json c;
        c["name"] = fit.names[static_cast<std::size_t>(k)];
        c["estimate"] = number(ci.estimate);
        c["low"] = number(ci.low);
        c["high"] = number(ci.high);
        c["critical_value"] = number(ci.critical_value);
        if (ci.factorization) {
            c["factorized"] = {{"relative_half_width", number(ci.factorization->relative_half_width)},
                               {"low", number(ci.factorization->low)},
                               {"high", number(ci.factorization->high)}};
        } else {
            c["factorized"] = nullptr;
        }
        intervals.push_back(std::move(c));
    }
    j["confidence_intervals"] = intervals;

    const ConventionalStatistics conv = conventional_statistics(fit);
    json cj;
    cj["available"] = conv.available;
    cj["df"] = conv.df;
    if (conv.available) {
        cj["sigma_sq"] = number(conv.sigma_sq);
        cj["t_values"] = numbers(conv.t_values);
        cj["f_stat"] = number(conv.f_stat);
    }
    j["conventional"] = cj;

    if (include_vectors) {
        j["fitted"] = numbers(fit.fitted);
        j["residuals"] = numbers(fit.residuals);
    }
    return j;
}

json to_json(const DiagnosticsReport& r) {
    json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["df"] = r.df;
    j["r_squared"] = number(r.r_squared);
    j["f_stat"] = number(r.f_stat);
    j["f_p_value"] = number(r.f_p_value);
    j["significance_infinite"] = r.significance_infinite;
    j["correlation_matrix"] = matrix(r.correlation_matrix);
    j["geometric"] = {{"y_norm", number(r.geometric.y_norm)},
                      {"fitted_norm", number(r.geometric.fitted_norm)},
                      {"residual_norm", number(r.geometric.residual_norm)},
                      {"pythagorean_gap", number(r.geometric.pythagorean_gap)}};
    json vars = json::array();
    for (const VariableDiagnostics& v : r.per_variable) {
        vars.push_back({{"name", v.name},
                        {"univariate_slope", number(v.univariate_slope)},
                        {"partial_slope", number(v.partial_slope)},
                        {"sign_deviation", v.sign_deviation},
                        {"t_paper", number(v.t_paper)},
                        {"t_univariate", number(v.t_univariate)},
                        {"t_star", number(v.t_star)},
                        {"vif", number(v.vif)},
                        {"component_norm", number(v.component_norm)},
                        {"net_component_norm", number(v.net_component_norm)}});
    }
    j["per_variable"] = vars;
    j["classification_hint"] = to_string(r.classification_hint);
    j["classification_advisory"] = true;
    return j;
}

json to_json(const StructureComparison& c) {
    json agree = json::array();
    for (bool b : c.sign_agreement) agree.push_back(b);
    return {{"names", c.names},
            {"original_partials", numbers(c.original_partials)},
            {"difference_partials", numbers(c.difference_partials)},
            {"original_univariates", numbers(c.original_univariates)},
            {"difference_univariates", numbers(c.difference_univariates)},
            {"max_abs_gap", number(c.max_abs_gap)},
            {"sign_agreement", agree}};
}

json to_json(const RidgePath& path) {
    json coefficients = json::array();
    for (const auto& b : path.coefficients) coefficients.push_back(numbers(b));
    return {{"names", path.names},
            {"lambdas", numbers(path.lambdas)},
            {"coefficients", coefficients},
            {"norms", numbers(path.norms)}};
}

json to_json(const ExperimentResult& r) {
    const DGPConfig& c = r.config;
    return {{"n", c.n},
            {"rho", number(c.rho)},
            {"beta0", number(c.beta0)},
            {"beta1", number(c.beta1)},
            {"beta2", number(c.beta2)},
            {"scale_x", number(c.scale_x)},
            {"trials", c.trials},
            {"seed", c.seed},
            {"flag", c.flag == FlagPredicate::partial_negative ? "partial_negative" : "partial_positive"},
            {"flagged", r.flagged},
            {"regenerated", r.regenerated},
            {"proportion", number(r.proportion)},
            {"mc_std_err", number(r.mc_std_err)},
            {"analytic_approx", number(r.analytic_approx)}};
}

json to_json(const TableGrid& grid) {
    json cells = json::array();
    for (const ExperimentResult& r : grid.cells) cells.push_back(to_json(r));
    return {{"table", grid.table},
            {"sample_sizes", grid.sample_sizes},
            {"rhos", numbers(grid.rhos)},
            {"beta1s", numbers(grid.beta1s)},
            {"cells", cells},
            {"warnings", grid.warnings}};
}

json decomposition_payload(const CenteredData& cd) {
    const FitResult fit = fit_ols(cd);
    const Eigen::VectorXd univariate = univariate_slopes(cd);
    const BMatrix b = b_matrix(cd);
    const Eigen::VectorXd rebuilt = decompose(b, fit.slopes);
    const double scale = std::max(univariate.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

    json j;
    j["names"] = cd.names;
    j["b_matrix"] = matrix(b.entries);
    j["b_matrix_layout"] = "entry[i][j] is the slope of regressor j on regressor i";
    j["univariate_slopes"] = numbers(univariate);
    j["partial_slopes"] = numbers(fit.slopes);
    j["reconstructed_univariates"] = numbers(rebuilt);
    j["max_relative_discrepancy"] = number((rebuilt - univariate).cwiseAbs().maxCoeff() / scale);
    j["effect_contributions"] = matrix(effect_contributions(b, fit.slopes));
    j["b_condition_number"] = number(condition_number(b));
    try {
        j["recovered_partials"] = numbers(recover_partials(b, univariate));
    } catch (const StructuralCollinearityError&) {
        j["recovered_partials"] = nullptr;
    }

    json vars = json::array();
    for (Eigen::Index k = 0; k < cd.p(); ++k) {
        json v;
        v["name"] = cd.names[static_cast<std::size_t>(k)];
        v["univariate_slope"] = number(univariate(k));
        v["direct_effect"] = number(fit.slopes(k));
        v["indirect_effect"] = number(rebuilt(k) - fit.slopes(k));
        v["t_value"] = number(fit.t_values(k));
        v["t_star"] = number(t_star(fit, cd, k));
        if (cd.p() >= 2) {
            const FWLResult f = fwl_residualize(cd, k);
            v["fwl"] = {{"slope", number(f.slope)},
                        {"t_value", number(f.t_value)},
                        {"y_resid_norm", number(f.y_resid.norm())},
                        {"net_component_norm", number(f.net_component().norm())},
                        {"residual_norm", number(f.residuals.norm())}};
        } else {
            v["fwl"] = nullptr;
        }
        vars.push_back(std::move(v));
    }
    j["per_variable"] = vars;
    j["significance_infinite"] = fit.rss == 0.0;
    return j;
}

namespace {

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    return v.dump();
}

bool is_flat_array(const json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return is_scalar(e); });
}

void render(const json& value, int indent, std::ostringstream& out);

void render_object(const json& obj, int indent, std::ostringstream& out) {
    std::size_t width = 0;
    for (auto it = obj.begin(); it != obj.end(); ++it) width = std::max(width, it.key().size());
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const json& v = it.value();
        out << pad << it.key();
        if (is_scalar(v) || is_flat_array(v)) {
            out << std::string(width - it.key().size(), ' ') << " : ";
            if (is_scalar(v)) {
                out << scalar_text(v);
            } else {
                for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "  " : "") << scalar_text(v[k]);
            }
            out << '\n';
        } else {
            out << ":\n";
            render(v, indent + 2, out);
        }
    }
}

void render(const json& value, int indent, std::ostringstream& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (value.is_object()) {
        render_object(value, indent, out);
    } else if (value.is_array()) {
        for (std::size_t k = 0; k < value.size(); ++k) {
            const json& e = value[k];
            if (is_flat_array(e)) {
                out << pad;
                for (std::size_t m = 0; m < e.size(); ++m) out << (m ? "  " : "") << scalar_text(e[m]);
                out << '\n';
            } else if (is_scalar(e)) {
                out << pad << scalar_text(e) << '\n';
            } else {
                out << pad << "[" << k << "]\n";
                render(e, indent + 2, out);
            }
        }
    } else {
        out << pad << scalar_text(value) << '\n';
    }
}

}  // namespace

namespace {

void dump(const json& v, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            dump(it.value(), indent + 2, out);
        }
        out += "\n" + pad + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k) out += ",\n";
            out += inner;
            dump(v[k], indent + 2, out);
        }
        out += "\n" + pad + "]";
    } else if (v.is_number_float()) {
        out += format_number(v.get<double>());
    } else {
        out += v.dump();
    }
}

}  // namespace

std::string dump_json(const json& value) {
    std::string out;
    dump(value, 0, out);
    return out;
}

std::string render_text(const json& value) {
    std::ostringstream out;
    render(value, 0, out);
    return out.str();
}

std::string render_table_layout(const TableGrid& grid) {
    std::ostringstream out;
    char buf[64];
    out << "Table " << grid.table << ": proportion of trials with slope on x1 < 0\n";
    out << "  n   ";
    for (double rho : grid.rhos) {
        std::snprintf(buf, sizeof buf, "| rho=%-4g", rho);
        out << buf << std::string(9 * grid.beta1s.size() - 8, ' ');
    }
    out << "\n      ";
    for (std::size_t r = 0; r < grid.rhos.size(); ++r) {
        out << "|";
        for (double beta : grid.beta1s) {
            std::snprintf(buf, sizeof buf, "%8g ", beta);
            out << buf;
        }
    }
    out << '\n';
    for (std::size_t i = 0; i < grid.sample_sizes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "  %-4zu", grid.sample_sizes[i]);
        out << buf;
        for (std::size_t r = 0; r < grid.rhos.size(); ++r) {
            out << "|";
            for (std::size_t b = 0; b < grid.beta1s.size(); ++b) {
                std::snprintf(buf, sizeof buf, "%7.2f%% ", 100.0 * grid.cell(i, r, b).proportion);
                out << buf;
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace collinear
