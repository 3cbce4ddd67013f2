#include "daxt/scaler.hpp"

#include <algorithm>

#include "daxt/errors.hpp"

namespace daxt {

namespace {
void require_fitted(const Scaler& s) {
    if (!s.fitted) throw ContractError("scaler used before fitting");
}
} // namespace

double Scaler::transform_col(size_t c, double v) const {
    require_fitted(*this);
    const double lo = col_min[c], hi = col_max[c];
    if (hi == lo) return 0.0;
    return (v - lo) / (hi - lo);
}

double Scaler::inverse_col(size_t c, double v) const {
    require_fitted(*this);
    const double lo = col_min[c], hi = col_max[c];
    if (hi == lo) return lo;
    return v * (hi - lo) + lo;
}

Scaler fit_scaler(const FeatureTable& training) {
    if (training.rows.empty()) throw ContractError("fit_scaler: empty training table");
    const size_t nf = training.n_features();
    Scaler s;
    s.col_min.assign(nf + 1, 0.0);
    s.col_max.assign(nf + 1, 0.0);
    bool first = true;
    for (const FeatureRow& r : training.rows) {
        if (r.features.size() != nf)
            throw ContractError("fit_scaler: row feature count mismatch");
        if (!r.has_target)
            throw ContractError("fit_scaler: training table row lacks a target");
        if (first) {
            for (size_t c = 0; c < nf; ++c) s.col_min[c] = s.col_max[c] = r.features[c];
            s.col_min[nf] = s.col_max[nf] = r.target;
            first = false;
            continue;
        }
        for (size_t c = 0; c < nf; ++c) {
            s.col_min[c] = std::min(s.col_min[c], r.features[c]);
            s.col_max[c] = std::max(s.col_max[c], r.features[c]);
        }
        s.col_min[nf] = std::min(s.col_min[nf], r.target);
        s.col_max[nf] = std::max(s.col_max[nf], r.target);
    }
    s.fitted = true;
    return s;
}

std::vector<double> transform_features(const Scaler& s, const std::vector<double>& features) {
    require_fitted(s);
    if (features.size() != s.n_features())
        throw ContractError("transform_features: feature count mismatch");
    std::vector<double> out(features.size());
    for (size_t c = 0; c < features.size(); ++c) out[c] = s.transform_col(c, features[c]);
    return out;
}

double transform_target(const Scaler& s, double v) {
    require_fitted(s);
    return s.transform_col(s.n_features(), v);
}

double inverse_transform_target(const Scaler& s, double v) {
    require_fitted(s);
    return s.inverse_col(s.n_features(), v);
}

void transform_table(const Scaler& s, FeatureTable& t) {
    require_fitted(s);
    for (FeatureRow& r : t.rows) {
        r.features = transform_features(s, r.features);
        if (r.has_target) r.target = transform_target(s, r.target);
    }
}

} // namespace daxt
