#pragma once

#include "collinear/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace collinear {

/// Which estimate counts as a flagged trial.
enum class FlagPredicate {
    partial_negative,  ///< slope on x1 < 0
    partial_positive,  ///< slope on x1 > 0
};

/** y = beta0 + beta1 x1 + beta2 x2 + u with x2 = rho x1 + sqrt(1 - rho^2) e.
 *
 * x1 and e are N(0, scale_x^2) (scale_x is a standard deviation), u is N(0, 1).
 */
struct DGPConfig {
    double beta0 = 2.0;
    double beta1 = 0.0;
    double beta2 = 1.0;
    double rho = 0.0;
    double scale_x = 5.0;
    std::size_t n = 30;
    std::size_t trials = 100000;
    std::uint64_t seed = 0;
    FlagPredicate flag = FlagPredicate::partial_negative;

    void validate() const;
};

struct ExperimentResult {
    DGPConfig config;
    std::size_t flagged = 0;
    std::size_t regenerated = 0;  ///< rank-deficient draws replaced from the next substream
    double proportion = 0.0;
    double mc_std_err = 0.0;
    double analytic_approx = 0.0;
};

/// Draw for (seed, trial_index); `attempt` selects a replacement substream.
Dataset generate_trial(const DGPConfig& config, std::uint64_t trial_index, std::uint32_t attempt = 0);

/** Runs config.trials bivariate fits and counts flagged slopes on x1.
 *
 * `threads` = 0 uses the hardware concurrency. Each trial reads only its
 * own substream, so the result does not depend on `threads`.
 */
ExperimentResult run_experiment(const DGPConfig& config, unsigned threads = 1);

/// Normal approximation Phi(-+beta1 * sqrt(n * scale_x^2 * (1 - rho^2))), sign per predicate.
double analytic_flag_probability(const DGPConfig& config);

struct TableGrid {
    int table = 0;  ///< 1: negative beta1 grid, 2: positive beta1 grid
    std::vector<std::size_t> sample_sizes;
    std::vector<double> rhos;
    std::vector<double> beta1s;
    /// Row-major over (n, rho, beta1).
    std::vector<ExperimentResult> cells;
    std::vector<std::string> warnings;

    const ExperimentResult& cell(std::size_t n_index, std::size_t rho_index, std::size_t beta_index) const;
};

/// n in {30, 50, 100} x rho in {0.8, 0.5} x the table's beta1 grid, all cells sharing `seed`.
TableGrid reproduce_table(int table, std::uint64_t seed, std::size_t trials = 100000, unsigned threads = 1);

std::vector<TableGrid> reproduce_tables(std::uint64_t seed, std::size_t trials = 100000,
                                        unsigned threads = 1);

}  // namespace collinear
