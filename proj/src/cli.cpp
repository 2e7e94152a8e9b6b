#include "collinear/cli.hpp"

#include "collinear/csv.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>

namespace collinear {

std::string to_string(Subcommand s) {
    switch (s) {
        case Subcommand::fit: return "fit";
        case Subcommand::decompose: return "decompose";
        case Subcommand::diagnose: return "diagnose";
        case Subcommand::ridge: return "ridge";
        case Subcommand::difference: return "difference";
        case Subcommand::simulate: return "simulate";
    }
    return "fit";
}

void RunConfig::validate() const {
    if (subcommand != Subcommand::simulate && !input_path) {
        throw ConfigError(to_string(subcommand) + " requires --input");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
    if (subcommand == Subcommand::difference && !ordered) {
        throw ConfigError("difference requires --ordered to confirm the row order is meaningful");
    }
    if (subcommand == Subcommand::simulate) {
        if (table && *table != 1 && *table != 2) throw ConfigError("--table must be 1 or 2");
        if (table && (n || rho || beta1)) {
            throw ConfigError("--table cannot be combined with --n, --rho or --beta1");
        }
        if ((n || rho || beta1) && !(rho && beta1)) {
            throw ConfigError("a single simulation cell needs --rho and --beta1");
        }
        if (trials < 1) throw ConfigError("--trials must be at least 1");
    }
}

json RunConfig::to_json() const {
    auto opt = [](const auto& v) -> json { return v ? json(*v) : json(nullptr); };
    json j;
    j["subcommand"] = to_string(subcommand);
    j["input_path"] = opt(input_path);
    j["response_column"] = response_column;
    j["alpha"] = number(alpha);
    j["lambda_grid"] = opt(lambda_grid);
    j["ordered"] = ordered;
    j["seed"] = seed;
    j["output_format"] = output_format == OutputFormat::json ? "json" : "text";
    if (subcommand == Subcommand::simulate) {
        j["table"] = opt(table);
        j["n"] = opt(n);
        j["rho"] = rho ? number(*rho) : json(nullptr);
        j["beta1"] = beta1 ? number(*beta1) : json(nullptr);
        j["trials"] = trials;
    }
    return j;
}

json ReportEnvelope::to_json() const {
    return {{"tool_version", tool_version},
            {"subcommand", subcommand},
            {"config", config_echo},
            {"payload", payload},
            {"warnings", warnings}};
}

std::vector<double> parse_lambda_grid(const std::string& spec) {
    auto parse_double = [&](const std::string& text) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size()) throw ConfigError("bad number '" + text + "' in --lambda-grid");
        return v;
    };
    std::vector<std::string> parts;
    std::stringstream in(spec);
    std::vector<double> grid;
    if (spec.rfind("log:", 0) == 0) {
        std::string item;
        std::stringstream rest(spec.substr(4));
        while (std::getline(rest, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw ConfigError("--lambda-grid log form is log:LO:HI:COUNT");
        const double lo = parse_double(parts[0]);
        const double hi = parse_double(parts[1]);
        const double count = parse_double(parts[2]);
        if (!(lo > 0.0) || !(hi > lo) || count < 2 || count != std::floor(count)) {
            throw ConfigError("--lambda-grid log form needs 0 < LO < HI and COUNT >= 2");
        }
        const int points = static_cast<int>(count);
        for (int k = 0; k < points; ++k) {
            const double e = std::log10(lo) + (std::log10(hi) - std::log10(lo)) * k / (points - 1);
            grid.push_back(std::pow(10.0, e));
        }
        return grid;
    }
    std::string item;
    while (std::getline(in, item, ',')) grid.push_back(parse_double(item));
    if (grid.empty()) throw ConfigError("--lambda-grid is empty");
    return grid;
}

bool looks_ordered(const Dataset& data) {
    const double n = static_cast<double>(data.n());
    for (const Column& col : data.columns()) {
        const auto& v = col.values;
        bool increasing = true;
        bool decreasing = true;
        for (std::size_t i = 1; i < v.size(); ++i) {
            increasing = increasing && v[i] >= v[i - 1];
            decreasing = decreasing && v[i] <= v[i - 1];
        }
        if (increasing || decreasing) return true;

        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= n;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            den += (v[i] - mean) * (v[i] - mean);
            if (i > 0) num += (v[i] - mean) * (v[i - 1] - mean);
        }
        if (den > 0.0 && num / den > 2.0 / std::sqrt(n)) return true;
    }
    return false;
}

namespace {

json simulate_payload(const RunConfig& config, std::vector<std::string>& warnings) {
    json payload;
    payload["seed"] = config.seed;
    if (config.rho) {
        DGPConfig c;
        c.n = config.n.value_or(30);
        c.rho = *config.rho;
        c.beta1 = *config.beta1;
        c.trials = config.trials;
        c.seed = config.seed;
        payload["experiment"] = to_json(run_experiment(c, config.threads));
        return payload;
    }
    std::vector<TableGrid> grids;
    if (config.table) {
        grids.push_back(reproduce_table(*config.table, config.seed, config.trials, config.threads));
    } else {
        grids = reproduce_tables(config.seed, config.trials, config.threads);
    }
    json tables = json::array();
    for (const TableGrid& g : grids) {
        for (const std::string& w : g.warnings) warnings.push_back(w);
        tables.push_back(to_json(g));
    }
    payload["tables"] = tables;
    return payload;
}

}  // namespace

ReportEnvelope run(const RunConfig& config) {
    config.validate();
    ReportEnvelope env;
    env.subcommand = to_string(config.subcommand);
    env.config_echo = config.to_json();

    if (config.subcommand == Subcommand::simulate) {
        env.payload = simulate_payload(config, env.warnings);
        return env;
    }

    const Dataset data = read_csv(*config.input_path, config.response_column);
    const std::string order_warning =
        "--ordered was given but no column shows monotone or serially correlated order; "
        "differencing may be arbitrary";

    switch (config.subcommand) {
        case Subcommand::fit:
            env.payload = to_json(fit_ols(data), config.alpha);
            break;
        case Subcommand::decompose:
            env.payload = decomposition_payload(center(data));
            break;
        case Subcommand::diagnose: {
            const DiagnosticsReport report = geometric_report(data);
            env.payload = to_json(report);
            if (config.ordered) {
                if (!looks_ordered(data)) env.warnings.push_back(order_warning);
                const StructureComparison cmp =
                    structure_compare(fit_ols(data), difference_model(data), data);
                env.payload["difference_comparison"] = to_json(cmp);
                env.payload["classification_hint"] = to_string(classify_cause(report, cmp));
            } else {
                env.payload["difference_comparison"] = nullptr;
            }
            break;
        }
        case Subcommand::ridge: {
            const CenteredData cd = center(data);
            const std::vector<double> grid =
                config.lambda_grid ? parse_lambda_grid(*config.lambda_grid) : default_lambda_grid(cd);
            env.payload = to_json(ridge_path(cd, grid));
            env.payload["ols_slopes"] = numbers(fit_ols(cd).slopes);
            break;
        }
        case Subcommand::difference: {
            if (!looks_ordered(data)) env.warnings.push_back(order_warning);
            const FitResult original = fit_ols(data);
            const FitResult differenced = difference_model(data);
            env.payload["difference_fit"] = to_json(differenced, config.alpha);
            env.payload["comparison"] = to_json(structure_compare(original, differenced, data));
            break;
        }
        case Subcommand::simulate:
            break;
    }
    return env;
}

int exit_status(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return 2;
        case ErrorKind::data: return 3;
        case ErrorKind::io: return 3;
        case ErrorKind::numerical: return 4;
    }
    return 1;
}

namespace {

void emit_error(std::ostream& out, std::ostream& err, bool as_json, const std::string& code,
                const std::string& message, int status) {
    if (as_json) {
        const json e = {{"error", {{"code", code}, {"message", message}, {"exit_status", status}}}};
        out << dump_json(e) << '\n';
    }
    err << "collinear-lens: " << code << ": " << message << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regression decomposition and multicollinearity diagnostics", "collinear-lens"};
    app.require_subcommand(1);

    RunConfig config;
    std::string input;
    std::string format = "json";
    std::string lambda_grid;
    int table = 0;
    std::size_t n = 0;
    double rho = 0.0;
    double beta1 = 0.0;

    auto add_data_options = [&](CLI::App* sub) {
        sub->add_option("--input", input, "CSV file with a header row")->required();
        sub->add_option("--response", config.response_column, "Response column name")->capture_default_str();
        sub->add_option("--alpha", config.alpha, "Two-sided significance level")->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    };

    auto* fit = app.add_subcommand("fit", "Centered OLS fit with geometric t, F and intervals");
    auto* decompose = app.add_subcommand("decompose", "B matrix and univariate/partial decomposition");
    auto* diagnose = app.add_subcommand("diagnose", "Sign deviation, VIF, norms and cause hint");
    auto* ridge = app.add_subcommand("ridge", "Ridge coefficient path");
    auto* difference = app.add_subcommand("difference", "First-difference model and structure comparison");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo sign-deviation experiments");

    for (CLI::App* sub : {fit, decompose, diagnose, ridge, difference}) {
        add_data_options(sub);
        add_format(sub);
    }
    add_format(simulate);
    ridge->add_option("--lambda-grid", lambda_grid, "a,b,c or log:LO:HI:COUNT");
    diagnose->add_flag("--ordered", config.ordered, "Rows carry a meaningful order; adds the difference model");
    difference->add_flag("--ordered", config.ordered, "Confirm that the row order is meaningful");
    simulate->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
    simulate->add_option("--table", table, "Reproduce one table grid (1 or 2)");
    simulate->add_option("--n", n, "Sample size for a single cell");
    simulate->add_option("--rho", rho, "Regressor correlation for a single cell");
    simulate->add_option("--beta1", beta1, "Coefficient on x1 for a single cell");
    simulate->add_option("--trials", config.trials, "Trials per cell")->capture_default_str();
    simulate->add_option("--threads", config.threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    const bool wants_json = [&] {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "text" && args[i + 1] == "--format") return false;
        }
        for (const auto& a : args) {
            if (a == "--format=text") return false;
        }
        return true;
    }();

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        emit_error(out, err, wants_json, "config_error", e.what(), 2);
        return 2;
    }

    if (fit->parsed()) config.subcommand = Subcommand::fit;
    if (decompose->parsed()) config.subcommand = Subcommand::decompose;
    if (diagnose->parsed()) config.subcommand = Subcommand::diagnose;
    if (ridge->parsed()) config.subcommand = Subcommand::ridge;
    if (difference->parsed()) config.subcommand = Subcommand::difference;
    if (simulate->parsed()) config.subcommand = Subcommand::simulate;

    if (!input.empty()) config.input_path = input;
    if (!lambda_grid.empty()) config.lambda_grid = lambda_grid;
    config.output_format = format == "text" ? OutputFormat::text : OutputFormat::json;
    if (simulate->count("--table")) config.table = table;
    if (simulate->count("--n")) config.n = n;
    if (simulate->count("--rho")) config.rho = rho;
    if (simulate->count("--beta1")) config.beta1 = beta1;

    const bool as_json = config.output_format == OutputFormat::json;
    try {
        const ReportEnvelope env = run(config);
        const json j = env.to_json();
        if (as_json) {
            out << dump_json(j) << '\n';
        } else {
            if (config.subcommand == Subcommand::simulate && env.payload.contains("tables")) {
                for (const json& t : env.payload["tables"]) {
                    TableGrid g;
                    g.table = t["table"].get<int>();
                    g.sample_sizes = t["sample_sizes"].get<std::vector<std::size_t>>();
                    g.rhos = t["rhos"].get<std::vector<double>>();
                    g.beta1s = t["beta1s"].get<std::vector<double>>();
                    for (const json& c : t["cells"]) {
                        ExperimentResult r;
                        r.proportion = c["proportion"].get<double>();
                        g.cells.push_back(r);
                    }
                    out << render_table_layout(g) << '\n';
                }
            }
            out << render_text(j);
        }
        return 0;
    } catch (const Error& e) {
        const int status = exit_status(e.kind());
        emit_error(out, err, as_json, e.code(), e.what(), status);
        return status;
    } catch (const std::exception& e) {
        emit_error(out, err, as_json, "internal_error", e.what(), 1);
        return 1;
    }
}

}  // namespace collinear
