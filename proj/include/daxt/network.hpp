#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daxt/scaler.hpp"
#include "daxt/sequences.hpp"

namespace daxt {

// Fully connected regressor, layer sizes [3a, 10, 10, 10, 1]. Hidden layers
// use ELU (alpha = 1), the output is linear.
struct Network {
    std::vector<int> layers;
    std::vector<std::vector<double>> w;  // w[l]: layers[l+1] x layers[l], row-major
    std::vector<std::vector<double>> b;  // b[l]: layers[l+1]
    std::uint64_t seed = 0;

    int n_layers() const { return static_cast<int>(layers.size()); }
    int input_size() const { return layers.front(); }
};

struct TrainConfig {
    int epochs = 50;
    int batch = 32;
    double rho = 0.95;
    double eps = 1e-7;
    double split = 0.2;   // validation fraction
    std::uint64_t seed = 0;
};

struct EpochStats {
    double train_mae = 0.0;
    double val_mae = 0.0;
};

struct TrainedModel {
    Network net;
    Scaler scaler;
    int a = 0;
    std::vector<EpochStats> history;  // original target units
    double zero_baseline = 0.0;       // mean |target| on validation, original units
    std::string corpus_fingerprint;
    std::uint64_t seed = 0;
    double split = 0.2;
};

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases,
// deterministic per seed.
Network init_network(int a, std::uint64_t seed);

double forward(const Network& net, const std::vector<double>& features);

// Shuffled deterministic split: returns (train indices, validation indices).
// The validation set takes floor(split * n) rows. Shared with the validation
// stage so residuals are computed on exactly the held-out rows.
std::pair<std::vector<size_t>, std::vector<size_t>> split_indices(size_t n, double split,
                                                                  std::uint64_t seed);

// Analytic gradient of the MAE over the given rows with respect to every
// parameter, shaped like the network. Subgradient at the |.| corner is 0.
struct Gradients {
    std::vector<std::vector<double>> w, b;
};
Gradients mae_gradient(const Network& net, const std::vector<FeatureRow>& rows);

// Mini-batch MAE training with per-parameter Adadelta. The table must already
// be scaled; the scaler is embedded in the result and used to report history
// and baseline in original target units. Non-finite loss or parameters abort
// with a training fault naming the epoch and batch.
TrainedModel train(const Network& net, const FeatureTable& scaled_table, const Scaler& scaler,
                   const TrainConfig& cfg);

// Max relative error between analytic and central finite-difference gradients
// (h = 1e-5) of the MAE over the sample rows. Parameters whose perturbation
// crosses a kink (the |.| corner or an ELU pre-activation sign change on any
// row) are skipped.
double gradient_check(const Network& net, const std::vector<FeatureRow>& rows, double h = 1e-5);

// Prediction on unscaled features: scale, forward, inverse-transform.
double predict_raw(const TrainedModel& m, const std::vector<double>& raw_features);

// Text persistence; load(save(m)) is bit-identical (hexfloat parameters).
void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);
std::string model_to_text(const TrainedModel& m);
TrainedModel model_from_text(const std::string& text);

} // namespace daxt
