#include "collinear/decomposition.hpp"
#include "collinear/errors.hpp"
#include "collinear/montecarlo.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace collinear;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

Ordering shuffled(std::size_t n, std::mt19937_64& rng) {
    Ordering o(n);
    std::iota(o.begin(), o.end(), std::size_t{0});
    std::shuffle(o.begin(), o.end(), rng);
    return o;
}

}  // namespace

TEST_CASE("cumulative weights of a symmetric x") {
    const WeightVector wv = cumulative_weights(vec({1, 2, 3}));
    const double ns2 = 2.0;  // n * s^2 = sum of squared deviations
    CHECK(wv.g(0) == doctest::Approx(1.0 / ns2));
    CHECK(wv.g(1) == doctest::Approx(0.0));
    CHECK(wv.g(2) == doctest::Approx(-1.0 / ns2));
    CHECK(wv.w.size() == 2);
    CHECK(wv.g.sum() == doctest::Approx(0.0));
    CHECK(wv.mean == 2.0);
    CHECK(wv.variance == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("weights against the prefix-sum oracle") {
    const std::vector<double> x{3.5, -1.0, 2.25, 8.0, 0.5, 4.75, -2.5};
    const WeightVector wv = cumulative_weights(Eigen::Map<const VectorXd>(x.data(), 7));
    const auto want = oracle::prefix_weights(oracle::to_real(x));
    REQUIRE(wv.w.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(oracle::rel_err(wv.w(static_cast<Eigen::Index>(i)), want[i]) < 1e-13);
}

TEST_CASE("self inner product is one") {
    const VectorXd x = vec({0, 1, 3, 4});
    CHECK(inner_product_slope(cumulative_weights(x), difference(x)) == doctest::Approx(1.0).epsilon(1e-14));
    const VectorXd y = 2.0 * x;
    CHECK(inner_product_slope(cumulative_weights(x), difference(y)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("difference vector telescopes") {
    const VectorXd v = vec({4, -1, 7, 2, 2.5});
    const DifferenceVector d = difference(v);
    CHECK(d.values.size() == 4);
    CHECK(d.values.sum() == doctest::Approx(v(4) - v(0)));
    const Ordering o{4, 2, 0, 1, 3};
    const DifferenceVector e = difference(v, o);
    CHECK(e.values(0) == v(2) - v(4));
    CHECK(e.values.sum() == doctest::Approx(v(3) - v(4)));
}

TEST_CASE("inner-product slope is order independent") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> z(0.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        VectorXd x(50), y(50);
        for (Eigen::Index i = 0; i < 50; ++i) {
            x(i) = z(rng) + 10;
            y(i) = 0.7 * x(i) + z(rng);
        }
        const long double want = oracle::slope(oracle::to_real(x), oracle::to_real(y));
        CHECK(oracle::rel_err(inner_product_slope(cumulative_weights(x), difference(y)), want) < 1e-10);
        const Ordering o = shuffled(50, rng);
        CHECK(oracle::rel_err(inner_product_slope(cumulative_weights(x, o), difference(y, o)), want) < 1e-10);
    }
}

TEST_CASE("ordering contracts") {
    const VectorXd x = vec({1, 2, 4, 8});
    CHECK_THROWS_AS(inner_product_slope(cumulative_weights(x), difference(x, {1, 0, 2, 3})), ContractError);
    CHECK_THROWS_AS(inner_product_slope(cumulative_weights(x), difference(vec({1, 2, 3}))), ContractError);
    CHECK_THROWS_AS(cumulative_weights(x, {0, 0, 1, 2}), ContractError);
    CHECK_THROWS_AS(difference(x, {0, 1, 2}), ContractError);
    CHECK_THROWS_AS(cumulative_weights(vec({3, 3, 3})), DegenerateRegressorError);
}

TEST_CASE("B matrix") {
    SUBCASE("orthogonal columns give the identity") {
        MatrixXd x(4, 3);
        x << 1, 1, 1, -1, 1, -1, 1, -1, -1, -1, -1, 1;
        const BMatrix b = b_matrix(center(x, vec({1, 2, 3, 5}), oracle::names(3)));
        CHECK((b.entries - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("inner-product cross-check and R^2 product") {
        std::mt19937_64 rng(43);
        for (int rep = 0; rep < 30; ++rep) {
            const Eigen::Index p = 2 + rep % 3;
            const MatrixXd x = oracle::random_design(rng, 25, p);
            const CenteredData cd = center(x, oracle::random_response(rng, x), oracle::names(p));
            const BMatrix b = b_matrix(cd);
            for (Eigen::Index i = 0; i < p; ++i) {
                CHECK(b.entries(i, i) == 1.0);
                for (Eigen::Index j = 0; j < p; ++j) {
                    const double lhs = b.entries(i, j) * cd.x.col(i).squaredNorm();
                    const double rhs = b.entries(j, i) * cd.x.col(j).squaredNorm();
                    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(cd.x.col(i).dot(cd.x.col(j))) + 1e-12);
                    const long double want = oracle::slope(oracle::to_real(VectorXd(x.col(i))), oracle::to_real(VectorXd(x.col(j))));
                    CHECK(oracle::rel_err(b.entries(i, j), want) < 1e-10);
                }
            }
            const long double r = oracle::correlation(oracle::to_real(VectorXd(x.col(0))), oracle::to_real(VectorXd(x.col(1))));
            if (p == 2) CHECK(std::abs(b.entries(0, 1) * b.entries(1, 0) - static_cast<double>(r * r)) < 1e-10);
        }
    }
    SUBCASE("equal variance columns have off-diagonals equal to r") {
        MatrixXd x(4, 2);
        x << 1, 1, -1, 1, 1, -1, -1, -1;
        x.col(1) = 0.6 * x.col(0) + 0.8 * x.col(1);
        const BMatrix b = b_matrix(center(x, vec({1, 0, 2, 1}), oracle::names(2)));
        CHECK(b.entries(0, 1) == doctest::Approx(0.6));
        CHECK(b.entries(1, 0) == doctest::Approx(0.6));
    }
}

TEST_CASE("decomposition identity") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 50; ++rep) {
        const Eigen::Index p = 2 + rep % 4;
        const MatrixXd x = oracle::random_design(rng, 40, p);
        const VectorXd y = oracle::random_response(rng, x);
        const CenteredData cd = center(x, y, oracle::names(p));
        const FitResult f = fit_ols(cd);
        const BMatrix b = b_matrix(cd);
        const VectorXd rebuilt = decompose(b, f.slopes);
        for (Eigen::Index j = 0; j < p; ++j) {
            const long double want = oracle::slope(oracle::to_real(VectorXd(x.col(j))), oracle::to_real(y));
            CHECK(oracle::rel_err(rebuilt(j), want) < 1e-8);
        }
        const MatrixXd contrib = effect_contributions(b, f.slopes);
        for (Eigen::Index i = 0; i < p; ++i) {
            CHECK(contrib(i, i) == doctest::Approx(f.slopes(i)));
            CHECK(contrib.row(i).sum() == doctest::Approx(rebuilt(i)));
        }
        const VectorXd recovered = recover_partials(b, univariate_slopes(cd));
        for (Eigen::Index j = 0; j < p; ++j) CHECK(oracle::rel_err(recovered(j), f.slopes(j)) < 1e-8);
    }
}

TEST_CASE("identity B is a no-op") {
    BMatrix b{MatrixXd::Identity(3, 3), oracle::names(3)};
    const VectorXd v = vec({1.5, -2, 0.25});
    CHECK(decompose(b, v) == v);
    CHECK((recover_partials(b, v) - v).norm() == 0.0);
    CHECK(condition_number(b) == doctest::Approx(1.0));
}

TEST_CASE("recover is the inverse of decompose") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> z(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        const MatrixXd x = oracle::random_design(rng, 30, 3);
        const BMatrix b = b_matrix(center(x, VectorXd::Zero(30), oracle::names(3)));
        VectorXd v(3);
        for (auto& e : v) e = z(rng);
        CHECK((recover_partials(b, decompose(b, v)) - v).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("two-term split on a DGP sample") {
    DGPConfig c;
    c.rho = 0.8;
    c.beta1 = -0.1;
    c.n = 200;
    c.seed = 7;
    const Dataset d = generate_trial(c, 0);
    const CenteredData cd = center(d);
    const FitResult f = fit_ols(cd);
    const BMatrix b = b_matrix(cd);
    const long double uni = oracle::slope(oracle::to_real(d.column("x1").values), oracle::to_real(d.column("y").values));
    CHECK(oracle::rel_err(f.slopes(0) + f.slopes(1) * b.entries(0, 1), uni) < 1e-10);
}

TEST_CASE("structurally collinear B is rejected") {
    BMatrix b{(MatrixXd(2, 2) << 1, 1, 1, 1 + 1e-14).finished(), oracle::names(2)};
    CHECK_THROWS_AS(recover_partials(b, vec({1, 1})), StructuralCollinearityError);
    CHECK_THROWS_AS(decompose(b, vec({1, 2, 3})), ContractError);
}

TEST_CASE("FWL residualization") {
    SUBCASE("orthogonal regressors leave x_j unchanged") {
        MatrixXd x(4, 2);
        x << 1, 1, -1, 1, 1, -1, -1, -1;
        const CenteredData cd = center(x, vec({2, 1, 0, 4}), oracle::names(2));
        const FWLResult r = fwl_residualize(cd, 0);
        CHECK((r.x_resid - cd.x.col(0)).norm() < 1e-14);
        CHECK(r.slope == doctest::Approx(fit_univariate(cd.x.col(0), cd.y)));
    }
    SUBCASE("matches the full fit on random data") {
        std::mt19937_64 rng(59);
        for (int rep = 0; rep < 40; ++rep) {
            const Eigen::Index p = 2 + rep % 2;
            const MatrixXd x = oracle::random_design(rng, 30, p);
            const CenteredData cd = center(x, oracle::random_response(rng, x), oracle::names(p));
            const FitResult f = fit_ols(cd);
            for (Eigen::Index j = 0; j < p; ++j) {
                const FWLResult r = fwl_residualize(cd, j);
                CHECK(std::abs(r.slope - f.slopes(j)) <= 1e-9 * std::max(1.0, std::abs(f.slopes(j))));
                CHECK((r.residuals - f.residuals).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, f.residual_norm()));
                CHECK(std::abs(r.t_value - f.t_values(j)) <= 1e-9 * std::max(1.0, std::abs(f.t_values(j))));
                const double lhs = r.y_resid.squaredNorm();
                const double rhs = r.net_component().squaredNorm() + f.rss;
                CHECK(std::abs(lhs - rhs) <= 1e-8 * lhs);
            }
        }
    }
    SUBCASE("DGP sample") {
        DGPConfig c;
        c.rho = 0.8;
        c.beta1 = 0.05;
        c.seed = 3;
        const CenteredData cd = center(generate_trial(c, 5));
        CHECK(std::abs(fwl_residualize(cd, 0).slope - fit_ols(cd).slopes(0)) < 1e-10);
    }
    SUBCASE("errors") {
        MatrixXd x(4, 1);
        x << 1, 2, 3, 5;
        const CenteredData one = center(x, vec({1, 2, 2, 3}), {"x1"});
        CHECK_THROWS_AS(fwl_residualize(one, 0), ContractError);
        MatrixXd x2(4, 2);
        x2 << 1, 0, 2, 1, 3, 0, 5, 1;
        const CenteredData two = center(x2, vec({1, 2, 2, 3}), oracle::names(2));
        CHECK_THROWS_AS(fwl_residualize(two, 2), ContractError);
    }
}

TEST_CASE("t star") {
    SUBCASE("orthogonal regressors give t* = |t|") {
        MatrixXd x(6, 2);
        x << 1, 1, -1, 1, 1, -1, -1, -1, 2, 0, -2, 0;
        const CenteredData cd = center(x, vec({2, 1, 0, 4, 3, -1}), oracle::names(2));
        const FitResult f = fit_ols(cd);
        for (Eigen::Index j = 0; j < 2; ++j) CHECK(std::abs(t_star(f, cd, j) - std::abs(f.t_values(j))) < 1e-10);
    }
    SUBCASE("correlated regressors give t* > |t|") {
        DGPConfig c;
        c.rho = 0.8;
        c.beta1 = 0.1;
        c.seed = 9;
        const CenteredData cd = center(generate_trial(c, 1));
        const FitResult f = fit_ols(cd);
        for (Eigen::Index j = 0; j < 2; ++j) CHECK(t_star(f, cd, j) > std::abs(f.t_values(j)));
    }
    SUBCASE("zero slope") {
        MatrixXd x(4, 1);
        x << -1, 0, 1, 0;
        const CenteredData cd = center(x, vec({1, -2, 1, 0}), {"x1"});
        CHECK(t_star(fit_ols(cd), cd, 0) == 0.0);
    }
}
