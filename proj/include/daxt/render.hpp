#pragma once

#include <string>
#include <vector>

#include "daxt/valuation.hpp"

namespace daxt {

// Percentile bins over the DAxT population, highest threat first.
enum class Bin { blue = 0, green = 1, yellow = 2, red = 3 };

const char* bin_color(Bin b);

// Cutoffs are nearest-rank percentiles of the full population (top 10%, top
// 30%, top 50%); each subject value takes the first bin whose cutoff it
// meets, so ties resolve toward the higher bin.
std::vector<Bin> assign_bins(const std::vector<double>& population,
                             const std::vector<double>& subjects);

// 1050x680 pitch outline with one marker per action, filled by bin color.
// Attack direction renders left to right. Byte-deterministic.
std::string pitch_scatter_svg(const std::vector<ValuedAction>& actions,
                              const std::vector<Bin>& bins);

// Scatter with an ordinary-least-squares line and a correlation annotation.
std::string scatter_regression_svg(const std::vector<double>& x, const std::vector<double>& y,
                                   const std::string& x_label, const std::string& y_label);

// Slope and intercept of the least-squares line y = b0 + b1 x.
std::pair<double, double> ols_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace daxt
