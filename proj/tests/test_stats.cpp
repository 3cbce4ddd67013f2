#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "daxt/csv.hpp"
#include "daxt/errors.hpp"
#include "daxt/rng.hpp"
#include "daxt/stats.hpp"

using namespace daxt;

namespace {

// Student-t density integrated by Simpson's rule; two-sided tail from the
// complement so polynomial tails never need truncating.
double t_two_sided_p(double t, double nu) {
    const double c =
        std::exp(std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0)) / std::sqrt(nu * M_PI);
    auto f = [&](double u) { return c * std::pow(1.0 + u * u / nu, -(nu + 1.0) / 2.0); };
    const int n = 100000;
    const double h = t / n;
    double acc = f(0.0) + f(t);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    const double integral = acc * h / 3.0;
    return 1.0 - 2.0 * integral;
}

// Kolmogorov asymptotic tail, written from the series definition.
double ks_series_p(double d, double n1, double n2) {
    if (d <= 0.0) return 1.0;
    const double ne = n1 * n2 / (n1 + n2);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 5000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? term : -term);
        if (term < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

// Maclaurin series for erf, good to machine precision for |z| < 4.
double erf_series(double z) {
    double term = z, sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= -z * z / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (std::fabs(add) < 1e-18) break;
    }
    return sum * 2.0 / std::sqrt(M_PI);
}

double normal_cdf_series(double x) { return 0.5 * (1.0 + erf_series(x / std::sqrt(2.0))); }

double quantile_bisect(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf_series(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Regularized incomplete beta by direct Simpson integration of the density.
double beta_cdf_simpson(double a, double b, double x) {
    auto f = [&](double u) { return std::pow(u, a - 1.0) * std::pow(1.0 - u, b - 1.0); };
    const int n = 200000;
    const double h = x / n;
    double acc = (a > 1.0 ? 0.0 : f(1e-300)) + f(x);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 ? 4.0 : 2.0);
    const double integral = acc * h / 3.0;
    const double beta = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    return integral / beta;
}

// Scan every distinct point of both samples and difference the ECDFs there.
double ks_ecdf_oracle(std::vector<double> s1, std::vector<double> s2) {
    std::vector<double> support = s1;
    support.insert(support.end(), s2.begin(), s2.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    double d = 0.0;
    for (double t : support) {
        const double c1 = static_cast<double>(std::count_if(
            s1.begin(), s1.end(), [&](double v) { return v <= t; }));
        const double c2 = static_cast<double>(std::count_if(
            s2.begin(), s2.end(), [&](double v) { return v <= t; }));
        d = std::max(d, std::fabs(c1 / s1.size() - c2 / s2.size()));
    }
    return d;
}

} // namespace

TEST_CASE("mean absolute error handles exact, offset, and zero predictions") {
    CHECK(mae({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(mae({1.0, 2.0, 3.0}, {1.1, 2.2, 2.85}) == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(mae({0.0, 0.0, 0.0}, {-1.0, 2.0, -3.0}) == 2.0);
    CHECK_THROWS_AS(mae({}, {}), ContractError);
    CHECK_THROWS_AS(mae({1.0}, {1.0, 2.0}), ContractError);
}

TEST_CASE("equal spreads give a zero variance-test statistic") {
    const TestResult r = levene_median({1, 2, 3}, {11, 12, 13});
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.n == 6);
    CHECK(r.n1 == 3);
    CHECK(r.n2 == 3);
}

TEST_CASE("the variance test matches a hand computation and a t-tail integral") {
    const TestResult r = levene_median({1, 2, 3, 4, 5}, {10, 20, 30, 40, 50});
    // medians 3 and 30; |deviations| average 1.2 and 12, grand mean 6.6;
    // between = 5*(1.2-6.6)^2 + 5*(12-6.6)^2 = 291.6, within = 2.8 + 280
    const double expected_w = 8.0 * 291.6 / 282.8;
    CHECK(r.statistic == doctest::Approx(expected_w).epsilon(1e-12));
    CHECK(std::fabs(r.p_value - t_two_sided_p(std::sqrt(expected_w), 8.0)) <= 1e-6);
}

TEST_CASE("the variance test ignores location shifts and ordering") {
    const std::vector<double> g1 = {3, 1, 4, 1, 5, 9, 2, 6};
    const std::vector<double> g2 = {2, 7, 1, 8, 2, 8, 1};
    const TestResult base = levene_median(g1, g2);

    std::vector<double> shifted = g2;
    for (double& v : shifted) v += 100.0;
    const TestResult moved = levene_median(g1, shifted);
    CHECK(std::fabs(moved.statistic - base.statistic) <= 1e-12);
    CHECK(std::fabs(moved.p_value - base.p_value) <= 1e-12);

    std::vector<double> r1 = g1, r2 = g2;
    std::reverse(r1.begin(), r1.end());
    std::reverse(r2.begin(), r2.end());
    const TestResult reordered = levene_median(r1, r2);
    CHECK(std::fabs(reordered.statistic - base.statistic) <= 1e-12);
    CHECK(std::fabs(reordered.p_value - base.p_value) <= 1e-12);
}

TEST_CASE("the variance test rejects degenerate inputs") {
    CHECK_THROWS_AS(levene_median({1.0}, {1, 2, 3}), ContractError);
    CHECK_THROWS_AS(levene_median({1, 2, 3}, {}), ContractError);
    CHECK_THROWS_AS(levene_median({5, 5, 5, 5}, {7, 7, 7, 7}), ContractError);
}

TEST_CASE("identical samples have zero distribution distance") {
    const std::vector<double> v = {0.4, -1.2, 3.3, 0.4};
    const TestResult r = ks_two_sample(v, v);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.n == 8);
}

TEST_CASE("disjoint samples have maximal distribution distance") {
    const TestResult r = ks_two_sample({0, 0, 0}, {1, 1, 1});
    CHECK(r.statistic == 1.0);
    CHECK(r.p_value < 0.05);
    CHECK(std::fabs(r.p_value - ks_series_p(1.0, 3, 3)) <= 1e-12);
}

TEST_CASE("the distribution test matches an ECDF scan on tied random samples") {
    Rng rng(314);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> s1(50), s2(60);
        for (double& v : s1) v = std::floor(rng.uniform(0.0, 20.0)) / 4.0;
        for (double& v : s2) v = std::floor(rng.uniform(2.0, 24.0)) / 4.0;
        const TestResult r = ks_two_sample(s1, s2);
        CHECK(r.statistic == ks_ecdf_oracle(s1, s2));
        CHECK(std::fabs(r.p_value - ks_series_p(r.statistic, 50, 60)) <= 1e-12);
    }
}

TEST_CASE("the distribution test is invariant under monotone transforms") {
    Rng rng(99);
    std::vector<double> s1(40), s2(35);
    for (double& v : s1) v = rng.uniform(-2.0, 2.0);
    for (double& v : s2) v = rng.uniform(-1.5, 2.5);
    const TestResult base = ks_two_sample(s1, s2);

    auto apply = [](std::vector<double> v, double (*f)(double)) {
        for (double& x : v) x = f(x);
        return v;
    };
    const TestResult cubed = ks_two_sample(apply(s1, [](double x) { return x * x * x; }),
                                           apply(s2, [](double x) { return x * x * x; }));
    CHECK(cubed.statistic == base.statistic);
    CHECK(cubed.p_value == base.p_value);

    const TestResult exped = ks_two_sample(apply(s1, [](double x) { return std::exp(x); }),
                                           apply(s2, [](double x) { return std::exp(x); }));
    CHECK(exped.statistic == base.statistic);
    CHECK(exped.p_value == base.p_value);

    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), ContractError);
    CHECK_THROWS_AS(ks_two_sample({1.0}, {}), ContractError);
}

TEST_CASE("perfect linear relations give correlation of exactly one") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v + 1.0);
    const TestResult up = pearson(x, y);
    CHECK(up.statistic == 1.0);
    CHECK(up.p_value == 0.0);

    for (size_t i = 0; i < y.size(); ++i) y[i] = 10.0 - x[i];
    const TestResult down = pearson(x, y);
    CHECK(down.statistic == -1.0);
    CHECK(down.p_value == 0.0);
}

TEST_CASE("correlation matches a direct covariance ratio and a t-tail integral") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {2, 1, 4, 3, 5};
    const TestResult r = pearson(x, y);
    CHECK(r.statistic == 0.8);  // cov 8 over sqrt(10*10)
    CHECK(r.n == 5);
    const double t = 0.8 * std::sqrt(3.0 / (1.0 - 0.64));
    CHECK(std::fabs(r.p_value - t_two_sided_p(t, 3.0)) <= 1e-6);
}

TEST_CASE("correlation is invariant under positive affine maps and shared permutations") {
    Rng rng(123);
    std::vector<double> x(30), y(30);
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(-1.0, 1.0);
        y[i] = 0.6 * x[i] + rng.uniform(-0.4, 0.4);
    }
    const TestResult base = pearson(x, y);

    std::vector<double> ax = x, cy = y;
    for (double& v : ax) v = 3.5 * v + 11.0;
    for (double& v : cy) v = 0.02 * v - 7.0;
    const TestResult affine = pearson(ax, cy);
    CHECK(std::fabs(affine.statistic - base.statistic) <= 1e-12);
    CHECK(std::fabs(affine.p_value - base.p_value) <= 1e-12);

    std::vector<double> nx = x;
    for (double& v : nx) v = -v;
    CHECK(std::fabs(pearson(nx, y).statistic + base.statistic) <= 1e-12);

    std::vector<size_t> order(x.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<double> px(x.size()), py(y.size());
    for (size_t i = 0; i < order.size(); ++i) {
        px[i] = x[order[i]];
        py[i] = y[order[i]];
    }
    const TestResult permuted = pearson(px, py);
    CHECK(std::fabs(permuted.statistic - base.statistic) <= 1e-12);
    CHECK(std::fabs(permuted.p_value - base.p_value) <= 1e-12);
}

TEST_CASE("correlation rejects short, mismatched, or constant input") {
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), ContractError);
    CHECK_THROWS_AS(pearson({1, 2}, {3, 4}), ContractError);
    CHECK_THROWS_AS(pearson({5, 5, 5}, {1, 2, 3}), ContractError);
    CHECK_THROWS_AS(pearson({1, 2, 3}, {4, 4, 4}), ContractError);
}

TEST_CASE("normal quantiles match an erf-series bisection oracle") {
    CHECK(norm_quantile(0.5) == 0.0);
    CHECK(std::fabs(norm_quantile(0.975) - 1.959963984540054) <= 1e-6);
    for (double p : {0.025, 0.5, 0.975})
        CHECK(std::fabs(norm_quantile(p) - quantile_bisect(p)) <= 1e-6);
    for (double p : {0.001, 0.01, 0.02, 0.05, 0.2, 0.35, 0.65, 0.9, 0.99, 0.999})
        CHECK(std::fabs(norm_quantile(p) - quantile_bisect(p)) <= 5e-9);
}

TEST_CASE("normal quantiles are antisymmetric, monotone, and domain-checked") {
    for (double p : {0.001, 0.01, 0.02425, 0.1, 0.25, 0.4, 0.49})
        CHECK(std::fabs(norm_quantile(p) + norm_quantile(1.0 - p)) <= 1e-9);
    double prev = norm_quantile(0.001);
    for (double p = 0.01; p < 1.0; p += 0.01) {
        const double q = norm_quantile(p);
        CHECK(q > prev);
        prev = q;
    }
    CHECK_THROWS_AS(norm_quantile(0.0), ContractError);
    CHECK_THROWS_AS(norm_quantile(1.0), ContractError);
    CHECK_THROWS_AS(norm_quantile(-0.2), ContractError);
    CHECK_THROWS_AS(norm_quantile(1.2), ContractError);
}

TEST_CASE("quantile pairs standardize and sort the residuals") {
    const auto pairs = qq_data({3.0, 1.0, 2.0});
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0].second == -1.0);
    CHECK(pairs[1].second == 0.0);
    CHECK(pairs[2].second == 1.0);
    CHECK(pairs[0].first == norm_quantile(0.5 / 3.0));
    CHECK(pairs[1].first == 0.0);
    CHECK(pairs[2].first == norm_quantile(2.5 / 3.0));

    Rng rng(55);
    std::vector<double> res(40);
    for (double& v : res) v = rng.uniform(-1.0, 1.0);
    const auto qq = qq_data(res);
    for (size_t i = 1; i < qq.size(); ++i) {
        CHECK(qq[i].first > qq[i - 1].first);
        CHECK(qq[i].second >= qq[i - 1].second);
    }

    CHECK_THROWS_AS(qq_data({1.0}), ContractError);
    CHECK_THROWS_AS(qq_data({2.0, 2.0, 2.0}), ContractError);
}

TEST_CASE("the within-band fraction counts both endpoints") {
    const std::vector<double> v = {-0.1, -0.05, 0.0, 0.05, 0.1};
    CHECK(fraction_within(v, -0.05, 0.05) == 0.6);
    CHECK(fraction_within(v, 0.0, 0.0) == 0.2);
    CHECK(fraction_within(v, -1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(fraction_within({}, 0.0, 1.0), ContractError);
}

TEST_CASE("log-gamma agrees with the standard library across the domain") {
    for (double x : {0.02, 0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 8.0, 10.0, 25.5, 100.3}) {
        const double ref = std::lgamma(x);
        CHECK(std::fabs(log_gamma(x) - ref) <= 1e-10 * std::max(1.0, std::fabs(ref)));
    }
}

TEST_CASE("the incomplete beta matches direct density integration") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(incomplete_beta(4.0, 4.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    struct Probe { double a, b, x; };
    for (const Probe p : {Probe{2.0, 3.0, 0.4}, Probe{5.5, 2.0, 0.7}, Probe{2.5, 3.5, 0.2},
                          Probe{1.0, 6.0, 0.15}, Probe{3.0, 1.5, 0.85}})
        CHECK(std::fabs(incomplete_beta(p.a, p.b, p.x) - beta_cdf_simpson(p.a, p.b, p.x)) <= 1e-8);

    for (const Probe p : {Probe{0.5, 2.0, 0.3}, Probe{4.0, 0.75, 0.6}, Probe{2.0, 2.0, 0.11}})
        CHECK(std::fabs(incomplete_beta(p.a, p.b, p.x) -
                        (1.0 - incomplete_beta(p.b, p.a, 1.0 - p.x))) <= 1e-12);

    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, -0.5) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.5) == 1.0);
    CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), ContractError);
    CHECK_THROWS_AS(incomplete_beta(1.0, -2.0, 0.5), ContractError);
}

TEST_CASE("result rows serialize as name,statistic,p,n") {
    const TestResult r = pearson({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5});
    const auto cells = csv::split_line(r.csv_line());
    REQUIRE(cells.size() == 4);
    CHECK(cells[0] == "pearson");
    CHECK(std::strtod(cells[1].c_str(), nullptr) == r.statistic);
    CHECK(std::strtod(cells[2].c_str(), nullptr) == r.p_value);
    CHECK(cells[3] == "5");
}
