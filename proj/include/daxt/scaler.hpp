#pragma once

#include <string>
#include <vector>

#include "daxt/sequences.hpp"

namespace daxt {

// Min-max normalization fitted on the training table: one column per feature
// plus the target column last. Degenerate columns (min == max) map to 0.
// No clipping, so out-of-range inputs scale outside [0,1] and invert exactly.
struct Scaler {
    std::vector<double> col_min;
    std::vector<double> col_max;
    bool fitted = false;

    size_t n_features() const { return fitted ? col_min.size() - 1 : 0; }

    double transform_col(size_t c, double v) const;
    double inverse_col(size_t c, double v) const;
};

Scaler fit_scaler(const FeatureTable& training);

std::vector<double> transform_features(const Scaler& s, const std::vector<double>& features);
double transform_target(const Scaler& s, double v);
double inverse_transform_target(const Scaler& s, double v);

// Scales every row of a table in place (features always, target when present).
void transform_table(const Scaler& s, FeatureTable& t);

} // namespace daxt
