#include "daxt/network.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "daxt/errors.hpp"
#include "daxt/rng.hpp"
#include "daxt/util.hpp"

namespace daxt {

namespace {

constexpr int kHidden = 10;

double elu(double z) { return z > 0.0 ? z : std::expm1(z); }
double elu_prime(double z) { return z > 0.0 ? 1.0 : std::exp(z); }
double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Pre-activations and activations for one input; a[0] is the input itself.
struct Trace {
    std::vector<std::vector<double>> z;  // per connection layer
    std::vector<std::vector<double>> a;  // a[0] = input, a[l+1] = activation of z[l]
    double out = 0.0;
};

Trace forward_trace(const Network& net, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != net.input_size())
        throw ContractError("forward: expected " + std::to_string(net.input_size()) +
                            " features, got " + std::to_string(x.size()));
    const int L = net.n_layers() - 1;  // connection layers
    Trace t;
    t.z.resize(L);
    t.a.resize(L + 1);
    t.a[0] = x;
    for (int l = 0; l < L; ++l) {
        const int n_in = net.layers[l];
        const int n_out = net.layers[l + 1];
        t.z[l].assign(n_out, 0.0);
        for (int i = 0; i < n_out; ++i) {
            double acc = net.b[l][i];
            const double* row = &net.w[l][static_cast<size_t>(i) * n_in];
            for (int j = 0; j < n_in; ++j) acc += row[j] * t.a[l][j];
            t.z[l][i] = acc;
        }
        if (l + 1 < L) {
            t.a[l + 1].resize(n_out);
            for (int i = 0; i < n_out; ++i) t.a[l + 1][i] = elu(t.z[l][i]);
        } else {
            t.a[l + 1] = t.z[l];  // linear output
        }
    }
    t.out = t.a[L][0];
    return t;
}

struct Grads {
    std::vector<std::vector<double>> w, b;

    explicit Grads(const Network& net) {
        w.resize(net.w.size());
        b.resize(net.b.size());
        for (size_t l = 0; l < net.w.size(); ++l) {
            w[l].assign(net.w[l].size(), 0.0);
            b[l].assign(net.b[l].size(), 0.0);
        }
    }
};

// Accumulates d(mean |out - y|)/d(params) for one sample, weighted 1/n.
void backprop_sample(const Network& net, const Trace& t, double dL_dout, Grads& g) {
    const int L = net.n_layers() - 1;
    std::vector<double> delta{dL_dout};
    for (int l = L - 1; l >= 0; --l) {
        const int n_in = net.layers[l];
        const int n_out = net.layers[l + 1];
        for (int i = 0; i < n_out; ++i) {
            g.b[l][i] += delta[i];
            double* wrow = &g.w[l][static_cast<size_t>(i) * n_in];
            for (int j = 0; j < n_in; ++j) wrow[j] += delta[i] * t.a[l][j];
        }
        if (l == 0) break;
        std::vector<double> prev(n_in, 0.0);
        for (int j = 0; j < n_in; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n_out; ++i) acc += net.w[l][static_cast<size_t>(i) * n_in + j] * delta[i];
            prev[j] = acc * elu_prime(t.z[l - 1][j]);
        }
        delta.swap(prev);
    }
}

double mae_over(const Network& net, const FeatureTable& t, const std::vector<size_t>& idx,
                const Scaler& scaler) {
    if (idx.empty()) return 0.0;
    double sum = 0.0;
    for (size_t i : idx) {
        const FeatureRow& r = t.rows[i];
        const double pred = inverse_transform_target(scaler, forward(net, r.features));
        const double truth = inverse_transform_target(scaler, r.target);
        sum += std::fabs(pred - truth);
    }
    return sum / static_cast<double>(idx.size());
}

bool all_finite(const Network& net) {
    for (const auto& m : net.w)
        for (double v : m)
            if (!std::isfinite(v)) return false;
    for (const auto& m : net.b)
        for (double v : m)
            if (!std::isfinite(v)) return false;
    return true;
}

} // namespace

Network init_network(int a, std::uint64_t seed) {
    if (a < 1) throw ContractError("init_network: a must be at least 1");
    Network net;
    net.seed = seed;
    net.layers = {3 * a, kHidden, kHidden, kHidden, 1};
    Rng rng(seed);
    const int L = net.n_layers() - 1;
    net.w.resize(L);
    net.b.resize(L);
    for (int l = 0; l < L; ++l) {
        const int n_in = net.layers[l];
        const int n_out = net.layers[l + 1];
        const double limit = std::sqrt(6.0 / (n_in + n_out));
        net.w[l].resize(static_cast<size_t>(n_in) * n_out);
        for (double& v : net.w[l]) v = rng.uniform(-limit, limit);
        net.b[l].assign(static_cast<size_t>(n_out), 0.0);
    }
    return net;
}

double forward(const Network& net, const std::vector<double>& features) {
    return forward_trace(net, features).out;
}

std::pair<std::vector<size_t>, std::vector<size_t>> split_indices(size_t n, double split,
                                                                  std::uint64_t seed) {
    if (split < 0.0 || split >= 1.0) throw ContractError("split fraction must be in [0,1)");
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(seed);
    rng.shuffle(order);
    const size_t n_val = static_cast<size_t>(split * static_cast<double>(n));
    const size_t n_train = n - n_val;
    std::vector<size_t> train(order.begin(), order.begin() + static_cast<long>(n_train));
    std::vector<size_t> val(order.begin() + static_cast<long>(n_train), order.end());
    return {std::move(train), std::move(val)};
}

TrainedModel train(const Network& net0, const FeatureTable& scaled_table, const Scaler& scaler,
                   const TrainConfig& cfg) {
    if (scaled_table.rows.empty()) throw ContractError("train: empty table");
    if (cfg.epochs < 1 || cfg.batch < 1) throw ContractError("train: epochs and batch must be positive");
    for (const FeatureRow& r : scaled_table.rows)
        if (!r.has_target) throw ContractError("train: table row lacks a target");

    TrainedModel m;
    m.net = net0;
    m.scaler = scaler;
    m.a = scaled_table.a;
    m.seed = cfg.seed;
    m.split = cfg.split;

    auto [train_idx, val_idx] = split_indices(scaled_table.rows.size(), cfg.split, cfg.seed);
    if (train_idx.empty()) throw ContractError("train: split leaves no training rows");

    double baseline = 0.0;
    for (size_t i : val_idx)
        baseline += std::fabs(inverse_transform_target(scaler, scaled_table.rows[i].target));
    m.zero_baseline = val_idx.empty() ? 0.0 : baseline / static_cast<double>(val_idx.size());

    Grads acc_g(m.net), acc_dx(m.net);
    Rng order_rng(cfg.seed ^ 0xd1b54a32d192ed03ull);
    std::vector<size_t> order = train_idx;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        order_rng.shuffle(order);
        for (size_t start = 0; start < order.size(); start += static_cast<size_t>(cfg.batch)) {
            const size_t end = std::min(order.size(), start + static_cast<size_t>(cfg.batch));
            const double inv_n = 1.0 / static_cast<double>(end - start);
            Grads g(m.net);
            double batch_loss = 0.0;
            for (size_t k = start; k < end; ++k) {
                const FeatureRow& r = scaled_table.rows[order[k]];
                Trace t = forward_trace(m.net, r.features);
                const double resid = t.out - r.target;
                batch_loss += std::fabs(resid) * inv_n;
                backprop_sample(m.net, t, sgn(resid) * inv_n, g);
            }
            if (!std::isfinite(batch_loss))
                throw TrainingFault("non-finite loss at epoch " + std::to_string(epoch + 1) +
                                    ", batch " + std::to_string(start / cfg.batch + 1));
            for (size_t l = 0; l < m.net.w.size(); ++l) {
                for (size_t k = 0; k < m.net.w[l].size(); ++k) {
                    const double grad = g.w[l][k];
                    acc_g.w[l][k] = cfg.rho * acc_g.w[l][k] + (1.0 - cfg.rho) * grad * grad;
                    const double step = -std::sqrt(acc_dx.w[l][k] + cfg.eps) /
                                        std::sqrt(acc_g.w[l][k] + cfg.eps) * grad;
                    acc_dx.w[l][k] = cfg.rho * acc_dx.w[l][k] + (1.0 - cfg.rho) * step * step;
                    m.net.w[l][k] += step;
                }
                for (size_t k = 0; k < m.net.b[l].size(); ++k) {
                    const double grad = g.b[l][k];
                    acc_g.b[l][k] = cfg.rho * acc_g.b[l][k] + (1.0 - cfg.rho) * grad * grad;
                    const double step = -std::sqrt(acc_dx.b[l][k] + cfg.eps) /
                                        std::sqrt(acc_g.b[l][k] + cfg.eps) * grad;
                    acc_dx.b[l][k] = cfg.rho * acc_dx.b[l][k] + (1.0 - cfg.rho) * step * step;
                    m.net.b[l][k] += step;
                }
            }
            if (!all_finite(m.net))
                throw TrainingFault("non-finite parameter at epoch " + std::to_string(epoch + 1) +
                                    ", batch " + std::to_string(start / cfg.batch + 1));
        }
        EpochStats stats;
        stats.train_mae = mae_over(m.net, scaled_table, train_idx, scaler);
        stats.val_mae = mae_over(m.net, scaled_table, val_idx, scaler);
        m.history.push_back(stats);
    }
    return m;
}

Gradients mae_gradient(const Network& net, const std::vector<FeatureRow>& rows) {
    if (rows.empty()) throw ContractError("mae_gradient: no rows");
    Grads g(net);
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    for (const FeatureRow& r : rows) {
        Trace t = forward_trace(net, r.features);
        backprop_sample(net, t, sgn(t.out - r.target) * inv_n, g);
    }
    return {std::move(g.w), std::move(g.b)};
}

namespace {

// Loss plus the kink signature: per-row residual signs and hidden
// pre-activation signs. A parameter whose +-h evaluations disagree on any
// sign sits across a non-smooth point, where finite differences are invalid.
struct LossProbe {
    double loss = 0.0;
    std::vector<int> signs;
};

LossProbe probe(const Network& net, const std::vector<FeatureRow>& rows) {
    LossProbe p;
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    for (const FeatureRow& r : rows) {
        Trace t = forward_trace(net, r.features);
        const double resid = t.out - r.target;
        p.loss += std::fabs(resid) * inv_n;
        p.signs.push_back(resid > 0.0 ? 1 : (resid < 0.0 ? -1 : 0));
        for (size_t l = 0; l + 1 < t.z.size(); ++l)
            for (double z : t.z[l]) p.signs.push_back(z > 0.0 ? 1 : (z < 0.0 ? -1 : 0));
    }
    return p;
}

} // namespace

double gradient_check(const Network& net, const std::vector<FeatureRow>& rows, double h) {
    if (rows.empty()) throw ContractError("gradient_check: no rows");
    Gradients analytic = mae_gradient(net, rows);
    Network probe_net = net;
    double worst = 0.0;

    auto check_param = [&](double& slot, double analytic_g) {
        const double saved = slot;
        slot = saved + h;
        LossProbe plus = probe(probe_net, rows);
        slot = saved - h;
        LossProbe minus = probe(probe_net, rows);
        slot = saved;
        if (plus.signs != minus.signs) return;  // kink crossed; estimate invalid
        const double numeric = (plus.loss - minus.loss) / (2.0 * h);
        const double rel = std::fabs(analytic_g - numeric) /
                           std::max({std::fabs(analytic_g), std::fabs(numeric), 1e-3});
        if (rel > worst) worst = rel;
    };

    for (size_t l = 0; l < probe_net.w.size(); ++l) {
        for (size_t k = 0; k < probe_net.w[l].size(); ++k) check_param(probe_net.w[l][k], analytic.w[l][k]);
        for (size_t k = 0; k < probe_net.b[l].size(); ++k) check_param(probe_net.b[l][k], analytic.b[l][k]);
    }
    return worst;
}

double predict_raw(const TrainedModel& m, const std::vector<double>& raw_features) {
    return inverse_transform_target(m.scaler, forward(m.net, transform_features(m.scaler, raw_features)));
}

namespace {

void put_vec(std::string& out, const char* tag, const std::vector<double>& v) {
    out += tag;
    for (double x : v) {
        out += ' ';
        out += fmt_hex(x);
    }
    out += '\n';
}

class TokenReader {
public:
    explicit TokenReader(const std::string& text) : in_(text) {}

    std::string word() {
        std::string t;
        if (!(in_ >> t)) throw IoError("model file: unexpected end of data");
        return t;
    }

    void expect(const std::string& tag) {
        std::string t = word();
        if (t != tag) throw IoError("model file: expected '" + tag + "', found '" + t + "'");
    }

    long integer() {
        std::string t = word();
        char* end = nullptr;
        long v = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0') throw IoError("model file: bad integer '" + t + "'");
        return v;
    }

    std::uint64_t unsigned_integer() {
        std::string t = word();
        char* end = nullptr;
        unsigned long long v = std::strtoull(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0') throw IoError("model file: bad integer '" + t + "'");
        return static_cast<std::uint64_t>(v);
    }

    double real() {
        std::string t = word();
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str() || *end != '\0') throw IoError("model file: bad number '" + t + "'");
        return v;
    }

    std::vector<double> reals(size_t n) {
        std::vector<double> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = real();
        return v;
    }

private:
    std::istringstream in_;
};

} // namespace

std::string model_to_text(const TrainedModel& m) {
    std::string out = "daxt-model v1\n";
    out += "a " + std::to_string(m.a) + "\n";
    out += "layers " + std::to_string(m.net.layers.size());
    for (int s : m.net.layers) out += " " + std::to_string(s);
    out += "\n";
    out += "seed " + std::to_string(m.seed) + "\n";
    out += "split " + fmt_hex(m.split) + "\n";
    out += "corpus " + (m.corpus_fingerprint.empty() ? std::string("-") : m.corpus_fingerprint) + "\n";
    out += "zero_baseline " + fmt_hex(m.zero_baseline) + "\n";
    put_vec(out, "scaler_min", m.scaler.col_min);
    put_vec(out, "scaler_max", m.scaler.col_max);
    for (size_t l = 0; l < m.net.w.size(); ++l) {
        put_vec(out, ("w" + std::to_string(l)).c_str(), m.net.w[l]);
        put_vec(out, ("b" + std::to_string(l)).c_str(), m.net.b[l]);
    }
    out += "history " + std::to_string(m.history.size()) + "\n";
    for (size_t e = 0; e < m.history.size(); ++e)
        out += std::to_string(e + 1) + " " + fmt_hex(m.history[e].train_mae) + " " +
               fmt_hex(m.history[e].val_mae) + "\n";
    out += "end daxt-model\n";
    return out;
}

TrainedModel model_from_text(const std::string& text) {
    TokenReader r(text);
    r.expect("daxt-model");
    std::string version = r.word();
    if (version != "v1") throw IoError("model file: unsupported format version '" + version + "'");
    TrainedModel m;
    r.expect("a");
    m.a = static_cast<int>(r.integer());
    r.expect("layers");
    const long n_layers = r.integer();
    if (n_layers < 2) throw IoError("model file: layer count too small");
    m.net.layers.resize(static_cast<size_t>(n_layers));
    for (auto& s : m.net.layers) s = static_cast<int>(r.integer());
    if (m.net.layers.front() != 3 * m.a) throw IoError("model file: input size does not match a");
    r.expect("seed");
    m.seed = r.unsigned_integer();
    m.net.seed = m.seed;
    r.expect("split");
    m.split = r.real();
    r.expect("corpus");
    std::string corpus = r.word();
    m.corpus_fingerprint = corpus == "-" ? "" : corpus;
    r.expect("zero_baseline");
    m.zero_baseline = r.real();
    const size_t n_cols = static_cast<size_t>(m.net.layers.front()) + 1;
    r.expect("scaler_min");
    m.scaler.col_min = r.reals(n_cols);
    r.expect("scaler_max");
    m.scaler.col_max = r.reals(n_cols);
    m.scaler.fitted = true;
    const size_t L = m.net.layers.size() - 1;
    m.net.w.resize(L);
    m.net.b.resize(L);
    for (size_t l = 0; l < L; ++l) {
        const size_t n_in = static_cast<size_t>(m.net.layers[l]);
        const size_t n_out = static_cast<size_t>(m.net.layers[l + 1]);
        r.expect("w" + std::to_string(l));
        m.net.w[l] = r.reals(n_in * n_out);
        r.expect("b" + std::to_string(l));
        m.net.b[l] = r.reals(n_out);
    }
    r.expect("history");
    const long n_hist = r.integer();
    m.history.resize(static_cast<size_t>(n_hist));
    for (long e = 0; e < n_hist; ++e) {
        if (r.integer() != e + 1) throw IoError("model file: history epochs out of order");
        m.history[static_cast<size_t>(e)].train_mae = r.real();
        m.history[static_cast<size_t>(e)].val_mae = r.real();
    }
    r.expect("end");
    r.expect("daxt-model");
    return m;
}

void save_model(const TrainedModel& m, const std::string& path) {
    write_file(path, model_to_text(m));
}

TrainedModel load_model(const std::string& path) {
    return model_from_text(read_file(path));
}

} // namespace daxt
