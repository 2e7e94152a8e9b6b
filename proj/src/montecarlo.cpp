#include "collinear/montecarlo.hpp"

#include "collinear/errors.hpp"
#include "collinear/ols.hpp"
#include "collinear/philox.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace collinear {

namespace {

constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << 48;

std::uint64_t substream_id(std::uint64_t trial_index, std::uint32_t attempt) {
    return (std::uint64_t{attempt} << 48) | trial_index;
}

struct Sample {
    std::vector<double> x1, x2, y;
};

void draw(const DGPConfig& c, std::uint64_t trial_index, std::uint32_t attempt, Sample& s) {
    NormalStream stream(c.seed, substream_id(trial_index, attempt));
    const double mix = std::sqrt(1.0 - c.rho * c.rho);
    s.x1.resize(c.n);
    s.x2.resize(c.n);
    s.y.resize(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        const double x1 = c.scale_x * stream.next();
        const double e = c.scale_x * stream.next();
        const double u = stream.next();
        const double x2 = c.rho * x1 + mix * e;
        s.x1[i] = x1;
        s.x2[i] = x2;
        s.y[i] = c.beta0 + c.beta1 * x1 + c.beta2 * x2 + u;
    }
}

// Two-regressor centered OLS slope on x1. Returns false for a rank-deficient draw,
// using the same equilibrated singular-value ratio as fit_ols.
bool bivariate_slope(const Sample& s, double& slope) {
    const std::size_t n = s.y.size();
    double m1 = 0.0, m2 = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m1 += s.x1[i];
        m2 += s.x2[i];
        my += s.y[i];
    }
    const double inv = 1.0 / static_cast<double>(n);
    m1 *= inv;
    m2 *= inv;
    my *= inv;
    double s11 = 0.0, s22 = 0.0, s12 = 0.0, s1y = 0.0, s2y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = s.x1[i] - m1;
        const double b = s.x2[i] - m2;
        const double c = s.y[i] - my;
        s11 += a * a;
        s22 += b * b;
        s12 += a * b;
        s1y += a * c;
        s2y += b * c;
    }
    if (!(s11 > 0.0) || !(s22 > 0.0)) return false;
    const double r = std::abs(s12) / std::sqrt(s11 * s22);
    if (!((1.0 - r) / (1.0 + r) > kRankTolerance)) return false;
    const double det = s11 * s22 - s12 * s12;
    slope = (s22 * s1y - s12 * s2y) / det;
    return true;
}

struct Tally {
    std::size_t flagged = 0;
    std::size_t regenerated = 0;
};

Tally run_range(const DGPConfig& c, std::uint64_t begin, std::uint64_t end) {
    Tally t;
    Sample s;
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        double slope = 0.0;
        std::uint32_t attempt = 0;
        for (;; ++attempt) {
            draw(c, trial, attempt, s);
            if (bivariate_slope(s, slope)) break;
            if (attempt == 0xFFFF) throw Error(ErrorKind::numerical, "rank_deficient",
                                               "every replacement draw was rank deficient");
        }
        t.regenerated += attempt;
        const bool flag = c.flag == FlagPredicate::partial_negative ? slope < 0.0 : slope > 0.0;
        t.flagged += flag ? 1 : 0;
    }
    return t;
}

}  // namespace

void DGPConfig::validate() const {
    if (!(std::abs(rho) < 1.0)) throw ConfigError("rho must satisfy |rho| < 1");
    if (n < 3) throw ConfigError("sample size n must be at least 3");
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (trials > kMaxTrials) throw ConfigError("trials must be below 2^48");
    if (!(scale_x > 0.0) || !std::isfinite(scale_x)) throw ConfigError("scale_x must be positive");
    if (!std::isfinite(beta0) || !std::isfinite(beta1) || !std::isfinite(beta2)) {
        throw ConfigError("coefficients must be finite");
    }
}

Dataset generate_trial(const DGPConfig& config, std::uint64_t trial_index, std::uint32_t attempt) {
    config.validate();
    if (trial_index >= kMaxTrials) throw ConfigError("trial index must be below 2^48");
    Sample s;
    draw(config, trial_index, attempt, s);
    return Dataset({{"x1", std::move(s.x1)}, {"x2", std::move(s.x2)}, {"y", std::move(s.y)}}, "y");
}

double analytic_flag_probability(const DGPConfig& c) {
    const double sd = 1.0 / std::sqrt(static_cast<double>(c.n) * c.scale_x * c.scale_x * (1.0 - c.rho * c.rho));
    const double z = c.beta1 / sd;
    const boost::math::normal standard;
    return c.flag == FlagPredicate::partial_negative ? boost::math::cdf(standard, -z)
                                                     : boost::math::cdf(standard, z);
}

ExperimentResult run_experiment(const DGPConfig& config, unsigned threads) {
    config.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t trials = config.trials;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

    std::vector<Tally> tallies(threads);
    if (threads == 1) {
        tallies[0] = run_range(config, 0, trials);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> workers;
            for (unsigned w = 0; w < threads; ++w) {
                const std::uint64_t begin = trials * w / threads;
                const std::uint64_t end = trials * (w + 1) / threads;
                workers.emplace_back([&, w, begin, end] {
                    try {
                        tallies[w] = run_range(config, begin, end);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    ExperimentResult r;
    r.config = config;
    for (const Tally& t : tallies) {
        r.flagged += t.flagged;
        r.regenerated += t.regenerated;
    }
    const double count = static_cast<double>(trials);
    r.proportion = static_cast<double>(r.flagged) / count;
    r.mc_std_err = std::sqrt(r.proportion * (1.0 - r.proportion) / count);
    r.analytic_approx = analytic_flag_probability(config);
    return r;
}

const ExperimentResult& TableGrid::cell(std::size_t n_index, std::size_t rho_index,
                                        std::size_t beta_index) const {
    if (n_index >= sample_sizes.size() || rho_index >= rhos.size() || beta_index >= beta1s.size()) {
        throw ContractError("table cell index out of range");
    }
    return cells[(n_index * rhos.size() + rho_index) * beta1s.size() + beta_index];
}

TableGrid reproduce_table(int table, std::uint64_t seed, std::size_t trials, unsigned threads) {
    TableGrid grid;
    grid.table = table;
    grid.sample_sizes = {30, 50, 100};
    grid.rhos = {0.8, 0.5};
    if (table == 1) {
        grid.beta1s = {-0.01, -0.05, -0.1, -0.2};
        grid.warnings.push_back(
            "table 1 rho=0.5 block uses the beta1 grid {-0.01, -0.05, -0.1, -0.2} by assumption");
    } else if (table == 2) {
        grid.beta1s = {0.01, 0.05, 0.1, 0.2};
    } else {
        throw ConfigError("table must be 1 or 2");
    }

    for (std::size_t n : grid.sample_sizes) {
        for (double rho : grid.rhos) {
            for (double beta1 : grid.beta1s) {
                DGPConfig c;
                c.n = n;
                c.rho = rho;
                c.beta1 = beta1;
                c.trials = trials;
                c.seed = seed;
                c.flag = FlagPredicate::partial_negative;
                grid.cells.push_back(run_experiment(c, threads));
            }
        }
    }
    return grid;
}

std::vector<TableGrid> reproduce_tables(std::uint64_t seed, std::size_t trials, unsigned threads) {
    return {reproduce_table(1, seed, trials, threads), reproduce_table(2, seed, trials, threads)};
}

}  // namespace collinear
