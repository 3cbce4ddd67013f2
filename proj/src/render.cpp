#include "daxt/render.hpp"

#include <algorithm>
#include <cmath>

#include "daxt/errors.hpp"
#include "daxt/stats.hpp"
#include "daxt/util.hpp"

namespace daxt {

const char* bin_color(Bin b) {
    switch (b) {
        case Bin::blue: return "blue";
        case Bin::green: return "green";
        case Bin::yellow: return "yellow";
        default: return "red";
    }
}

std::vector<Bin> assign_bins(const std::vector<double>& population,
                             const std::vector<double>& subjects) {
    if (population.empty()) throw ContractError("assign_bins: empty population");
    std::vector<double> sorted = population;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const double n = static_cast<double>(sorted.size());
    auto cutoff = [&](double q) {
        size_t rank = static_cast<size_t>(std::ceil(q * n));
        if (rank < 1) rank = 1;
        return sorted[rank - 1];
    };
    const double c10 = cutoff(0.10), c30 = cutoff(0.30), c50 = cutoff(0.50);
    std::vector<Bin> bins;
    bins.reserve(subjects.size());
    for (double v : subjects) {
        if (v >= c10) bins.push_back(Bin::blue);
        else if (v >= c30) bins.push_back(Bin::green);
        else if (v >= c50) bins.push_back(Bin::yellow);
        else bins.push_back(Bin::red);
    }
    return bins;
}

namespace {

constexpr double kScale = 10.0;  // canvas units per meter
constexpr double kW = 1050.0, kH = 680.0;

void line(std::string& s, double x1, double y1, double x2, double y2) {
    s += "<line x1=\"" + fmt_fixed4(x1) + "\" y1=\"" + fmt_fixed4(y1) + "\" x2=\"" + fmt_fixed4(x2) +
         "\" y2=\"" + fmt_fixed4(y2) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
}

void rect(std::string& s, double x, double y, double w, double h) {
    s += "<rect x=\"" + fmt_fixed4(x) + "\" y=\"" + fmt_fixed4(y) + "\" width=\"" + fmt_fixed4(w) +
         "\" height=\"" + fmt_fixed4(h) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
}

double px(double x) { return x * kScale; }
double py(double y) { return kH - y * kScale; }

} // namespace

std::string pitch_scatter_svg(const std::vector<ValuedAction>& actions,
                              const std::vector<Bin>& bins) {
    if (actions.size() != bins.size())
        throw ContractError("pitch_scatter_svg: one bin label per action required");
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1050\" height=\"680\" "
         "viewBox=\"0 0 1050 680\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"1050\" height=\"680\" fill=\"white\"/>\n";
    rect(s, 0.0, 0.0, kW, kH);                             // touchlines and goal lines
    line(s, kW / 2.0, 0.0, kW / 2.0, kH);                  // halfway line
    s += "<circle cx=\"" + fmt_fixed4(kW / 2.0) + "\" cy=\"" + fmt_fixed4(kH / 2.0) + "\" r=\"" +
         fmt_fixed4(9.15 * kScale) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    const double pa_depth = 16.5 * kScale;
    const double pa_width = 40.32 * kScale;
    const double pa_y = (kH - pa_width) / 2.0;
    rect(s, 0.0, pa_y, pa_depth, pa_width);                // left penalty area
    rect(s, kW - pa_depth, pa_y, pa_depth, pa_width);      // right penalty area
    for (size_t i = 0; i < actions.size(); ++i) {
        s += "<circle cx=\"" + fmt_fixed4(px(actions[i].x)) + "\" cy=\"" +
             fmt_fixed4(py(actions[i].y)) + "\" r=\"6\" fill=\"" + bin_color(bins[i]) +
             "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::pair<double, double> ols_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ContractError("ols_line: length mismatch");
    const size_t n = x.size();
    if (n < 2) throw ContractError("ols_line: at least 2 points required");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw ContractError("ols_line: x values are constant");
    const double b1 = sxy / sxx;
    return {my - b1 * mx, b1};
}

std::string scatter_regression_svg(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::string& x_label, const std::string& y_label) {
    auto [b0, b1] = ols_line(x, y);
    const size_t n = x.size();

    const double margin = 80.0;
    const double plot_w = kW - 2.0 * margin, plot_h = kH - 2.0 * margin;
    double x_lo = x[0], x_hi = x[0], y_lo = y[0], y_hi = y[0];
    for (size_t i = 0; i < n; ++i) {
        x_lo = std::min(x_lo, x[i]);
        x_hi = std::max(x_hi, x[i]);
        y_lo = std::min(y_lo, y[i]);
        y_hi = std::max(y_hi, y[i]);
    }
    const double x_pad = (x_hi - x_lo) * 0.05;
    double y_pad = (y_hi - y_lo) * 0.05;
    if (y_pad == 0.0) y_pad = 1.0;
    x_lo -= x_pad;
    x_hi += x_pad;
    y_lo -= y_pad;
    y_hi += y_pad;
    auto sx = [&](double v) { return margin + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    auto sy = [&](double v) { return kH - margin - (v - y_lo) / (y_hi - y_lo) * plot_h; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1050\" height=\"680\" "
         "viewBox=\"0 0 1050 680\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"1050\" height=\"680\" fill=\"white\"/>\n";
    line(s, margin, kH - margin, kW - margin, kH - margin);  // x axis
    line(s, margin, margin, margin, kH - margin);            // y axis
    s += "<text x=\"" + fmt_fixed4(kW / 2.0) + "\" y=\"" + fmt_fixed4(kH - margin / 3.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"20\">" + x_label +
         "</text>\n";
    s += "<text x=\"" + fmt_fixed4(margin / 3.0) + "\" y=\"" + fmt_fixed4(kH / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"20\" transform=\"rotate(-90 " +
         fmt_fixed4(margin / 3.0) + " " + fmt_fixed4(kH / 2.0) + ")\">" + y_label + "</text>\n";

    const double ly1 = b0 + b1 * x_lo, ly2 = b0 + b1 * x_hi;
    s += "<line x1=\"" + fmt_fixed4(sx(x_lo)) + "\" y1=\"" + fmt_fixed4(sy(ly1)) + "\" x2=\"" +
         fmt_fixed4(sx(x_hi)) + "\" y2=\"" + fmt_fixed4(sy(ly2)) +
         "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    for (size_t i = 0; i < n; ++i)
        s += "<circle cx=\"" + fmt_fixed4(sx(x[i])) + "\" cy=\"" + fmt_fixed4(sy(y[i])) +
             "\" r=\"5\" fill=\"blue\" stroke=\"black\" stroke-width=\"1\"/>\n";

    bool y_constant = true;
    for (size_t i = 1; i < n; ++i)
        if (y[i] != y[0]) y_constant = false;
    if (n >= 3 && !y_constant) {
        const TestResult r = pearson(x, y);
        s += "<text x=\"" + fmt_fixed4(kW - margin - 10.0) + "\" y=\"" + fmt_fixed4(margin + 20.0) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"20\">r = " +
             fmt_fixed4(r.statistic) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace daxt
