#include "daxt/stats.hpp"

#include <algorithm>
#include <cmath>

#include "daxt/errors.hpp"
#include "daxt/util.hpp"

namespace daxt {

std::string TestResult::csv_line() const {
    return name + "," + fmt_g17(statistic) + "," + fmt_g17(p_value) + "," + std::to_string(n);
}

double mae(const std::vector<double>& predictions, const std::vector<double>& actuals) {
    if (predictions.empty()) throw ContractError("mae: empty input");
    if (predictions.size() != actuals.size()) throw ContractError("mae: length mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < predictions.size(); ++i) sum += std::fabs(predictions[i] - actuals[i]);
    return sum / static_cast<double>(predictions.size());
}

double log_gamma(double x) {
    static const double kCoef[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    x -= 1.0;
    double acc = kCoef[0];
    for (int i = 1; i < 9; ++i) acc += kCoef[i] / (x + i);
    const double t = x + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

namespace {

// Lentz's algorithm for the incomplete beta continued fraction.
double beta_cf(double a, double b, double x) {
    const int kMaxIter = 300;
    const double kEps = 1e-15, kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ContractError("incomplete_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

TestResult levene_median(const std::vector<double>& group1, const std::vector<double>& group2) {
    if (group1.size() < 2 || group2.size() < 2)
        throw ContractError("levene_median: each group needs at least 2 values");
    const std::vector<double>* groups[2] = {&group1, &group2};
    const double med[2] = {median_of(group1), median_of(group2)};

    std::vector<double> dev[2];
    double zbar[2] = {0.0, 0.0};
    double grand = 0.0;
    size_t n_total = 0;
    for (int g = 0; g < 2; ++g) {
        dev[g].reserve(groups[g]->size());
        for (double v : *groups[g]) {
            const double z = std::fabs(v - med[g]);
            dev[g].push_back(z);
            zbar[g] += z;
            grand += z;
        }
        zbar[g] /= static_cast<double>(dev[g].size());
        n_total += dev[g].size();
    }
    grand /= static_cast<double>(n_total);

    double between = 0.0, within = 0.0;
    for (int g = 0; g < 2; ++g) {
        between += static_cast<double>(dev[g].size()) * (zbar[g] - grand) * (zbar[g] - grand);
        for (double z : dev[g]) within += (z - zbar[g]) * (z - zbar[g]);
    }
    if (within == 0.0)
        throw ContractError("levene_median: zero within-group spread, test undefined");

    const double d1 = 1.0;  // k - 1 with two groups
    const double d2 = static_cast<double>(n_total) - 2.0;
    const double w = (d2 / d1) * between / within;
    const double p = incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * w));

    TestResult r;
    r.name = "levene";
    r.statistic = w;
    r.p_value = clamp01(p);
    r.n = n_total;
    r.n1 = group1.size();
    r.n2 = group2.size();
    return r;
}

TestResult ks_two_sample(const std::vector<double>& group1, const std::vector<double>& group2) {
    if (group1.empty() || group2.empty())
        throw ContractError("ks_two_sample: each group needs at least 1 value");
    std::vector<double> s1 = group1, s2 = group2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    const double n1 = static_cast<double>(s1.size());
    const double n2 = static_cast<double>(s2.size());

    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < s1.size() || j < s2.size()) {
        double x;
        if (i == s1.size()) x = s2[j];
        else if (j == s2.size()) x = s1[i];
        else x = std::min(s1[i], s2[j]);
        while (i < s1.size() && s1[i] == x) ++i;
        while (j < s2.size() && s2[j] == x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }

    double p = 1.0;
    if (d > 0.0) {
        const double ne = n1 * n2 / (n1 + n2);
        const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
        if (lambda >= 1e-3) {
            double sum = 0.0;
            double sign = 1.0;
            for (int k = 1; k <= 5000; ++k) {
                const double term = std::exp(-2.0 * k * k * lambda * lambda);
                sum += sign * term;
                sign = -sign;
                if (term < 1e-12) break;
            }
            p = clamp01(2.0 * sum);
        }
    }

    TestResult r;
    r.name = "ks";
    r.statistic = d;
    r.p_value = p;
    r.n = s1.size() + s2.size();
    r.n1 = s1.size();
    r.n2 = s2.size();
    return r;
}

TestResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ContractError("pearson: length mismatch");
    const size_t n = x.size();
    if (n < 3) throw ContractError("pearson: at least 3 pairs required");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ContractError("pearson: correlation undefined for a constant vector");
    double r_val = sxy / std::sqrt(sxx * syy);
    r_val = std::min(1.0, std::max(-1.0, r_val));

    const double df = static_cast<double>(n) - 2.0;
    double p;
    if (std::fabs(r_val) >= 1.0) {
        p = 0.0;
    } else {
        const double t2 = r_val * r_val * df / (1.0 - r_val * r_val);
        p = incomplete_beta(df / 2.0, 0.5, df / (df + t2));
    }

    TestResult res;
    res.name = "pearson";
    res.statistic = r_val;
    res.p_value = clamp01(p);
    res.n = n;
    return res;
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ContractError("norm_quantile: p must lie strictly in (0,1)");
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::vector<std::pair<double, double>> qq_data(const std::vector<double>& residuals) {
    const size_t n = residuals.size();
    if (n < 2) throw ContractError("qq_data: at least 2 residuals required");
    double mean = 0.0;
    for (double v : residuals) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : residuals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    if (var == 0.0) throw ContractError("qq_data: residuals are constant");
    const double sd = std::sqrt(var);

    std::vector<double> sorted = residuals;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double pos = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        pairs.emplace_back(norm_quantile(pos), (sorted[i] - mean) / sd);
    }
    return pairs;
}

double fraction_within(const std::vector<double>& values, double lo, double hi) {
    if (values.empty()) throw ContractError("fraction_within: empty input");
    size_t count = 0;
    for (double v : values)
        if (v >= lo && v <= hi) ++count;
    return static_cast<double>(count) / static_cast<double>(values.size());
}

} // namespace daxt
