#pragma once

#include <string>
#include <vector>

namespace daxt {

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    size_t n = 0;       // total observations
    size_t n1 = 0, n2 = 0;  // group sizes where applicable

    std::string csv_line() const;  // name,statistic,p_value,n
};

double mae(const std::vector<double>& predictions, const std::vector<double>& actuals);

// Brown-Forsythe variant: one-way F statistic on absolute deviations from
// each group's median; p from F(k-1, N-k).
TestResult levene_median(const std::vector<double>& group1, const std::vector<double>& group2);

// D = sup |ECDF1 - ECDF2|; p from the asymptotic Kolmogorov series with
// effective size n1*n2/(n1+n2).
TestResult ks_two_sample(const std::vector<double>& group1, const std::vector<double>& group2);

// Sample correlation with two-sided p via the t distribution.
TestResult pearson(const std::vector<double>& x, const std::vector<double>& y);

// Inverse standard normal CDF, |error| < 1.2e-9 over (0,1).
double norm_quantile(double p);

// (theoretical, observed) pairs: normal quantiles at (i-0.5)/n against the
// sorted residuals standardized to zero mean, unit sample variance.
std::vector<std::pair<double, double>> qq_data(const std::vector<double>& residuals);

// Share of values lying inside [lo, hi], for the residual tail report.
double fraction_within(const std::vector<double>& values, double lo, double hi);

// Special functions backing the p-values; exposed for verification.
double log_gamma(double x);
double incomplete_beta(double a, double b, double x);  // regularized I_x(a,b)

} // namespace daxt
