// Copyright 2026 The cewlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cewlab/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "cewlab/error.h"
#include "cewlab/rng.h"

namespace cewlab {
namespace {

using json = nlohmann::json;

// Pre-activations and activations of every layer for one example.
struct Trace {
    std::vector<std::vector<double>> z;
    std::vector<std::vector<double>> a;  // a[0] is the input copy
    std::vector<std::vector<double>> delta;
};

Trace make_trace(const Mlp &m) {
    Trace t;
    const auto &layers = m.layers();
    t.a.resize(layers.size() + 1);
    t.z.resize(layers.size());
    t.delta.resize(layers.size());
    t.a[0].resize(m.input_dim());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        t.z[l].resize(layers[l].outputs);
        t.a[l + 1].resize(layers[l].outputs);
        t.delta[l].resize(layers[l].outputs);
    }
    return t;
}

double run_forward(const Mlp &m, std::span<const double> x, Trace &t) {
    const auto &layers = m.layers();
    std::copy(x.begin(), x.end(), t.a[0].begin());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer &layer = layers[l];
        const bool hidden = l + 1 < layers.size();
        const std::vector<double> &in = t.a[l];
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double *row = layer.weights.data() + o * layer.inputs;
            double s = layer.biases[o];
            for (std::size_t i = 0; i < layer.inputs; ++i) s += row[i] * in[i];
            t.z[l][o] = s;
            t.a[l + 1][o] = hidden ? std::max(s, 0.0) : s;
        }
    }
    return t.a.back()[0];
}

// Adds the gradient of scale * (f(x) - y)^2 to g.
void accumulate_backward(const Mlp &m, Trace &t, double output_error, double scale, Gradient &g) {
    const auto &layers = m.layers();
    const std::size_t last = layers.size() - 1;
    t.delta[last][0] = 2.0 * scale * output_error;
    for (std::size_t l = last + 1; l-- > 0;) {
        const DenseLayer &layer = layers[l];
        DenseLayer &gl = g.layers[l];
        const std::vector<double> &in = t.a[l];
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double d = t.delta[l][o];
            if (d == 0.0) continue;
            gl.biases[o] += d;
            double *grow = gl.weights.data() + o * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i) grow[i] += d * in[i];
        }
        if (l == 0) break;
        std::vector<double> &prev = t.delta[l - 1];
        std::fill(prev.begin(), prev.end(), 0.0);
        for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double d = t.delta[l][o];
            if (d == 0.0) continue;
            const double *row = layer.weights.data() + o * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i) prev[i] += row[i] * d;
        }
        for (std::size_t i = 0; i < prev.size(); ++i)
            if (t.z[l - 1][i] <= 0.0) prev[i] = 0.0;
    }
}

Gradient zero_gradient(const Mlp &m) {
    Gradient g;
    for (const auto &layer : m.layers()) g.layers.emplace_back(layer.inputs, layer.outputs);
    return g;
}

void reset(Gradient &g) {
    for (auto &layer : g.layers) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
        std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
    }
    g.loss = 0.0;
}

void check_input(const Mlp &m, std::span<const double> x) {
    if (x.size() != m.input_dim())
        throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(m.input_dim()) +
                                                      " features, got " + std::to_string(x.size()));
}

class Adam {
   public:
    Adam(const Mlp &m, const TrainConfig &cfg) : cfg_(cfg), m_(zero_gradient(m)), v_(zero_gradient(m)) {}

    void step(Mlp &model, const Gradient &g) {
        ++t_;
        const double c1 = 1.0 - std::pow(cfg_.beta1, t_);
        const double c2 = 1.0 - std::pow(cfg_.beta2, t_);
        for (std::size_t l = 0; l < model.layers().size(); ++l) {
            update(model.layers()[l].weights, g.layers[l].weights, m_.layers[l].weights, v_.layers[l].weights, c1, c2);
            update(model.layers()[l].biases, g.layers[l].biases, m_.layers[l].biases, v_.layers[l].biases, c1, c2);
        }
    }

   private:
    void update(std::vector<double> &p, const std::vector<double> &g, std::vector<double> &m, std::vector<double> &v,
                double c1, double c2) const {
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g[i];
            v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
            const double mhat = m[i] / c1;
            const double vhat = v[i] / c2;
            p[i] -= cfg_.learning_rate * mhat / (std::sqrt(vhat) + cfg_.epsilon);
        }
    }

    TrainConfig cfg_;
    Gradient m_;
    Gradient v_;
    int t_ = 0;
};

bool all_finite(const Mlp &m) {
    for (const auto &layer : m.layers()) {
        for (double w : layer.weights)
            if (!std::isfinite(w)) return false;
        for (double b : layer.biases)
            if (!std::isfinite(b)) return false;
    }
    return true;
}

}  // namespace

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw Error(ErrorCode::InvalidArgument, "Mlp: no layers");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const DenseLayer &layer = layers_[l];
        if (layer.inputs == 0 || layer.outputs == 0 || layer.weights.size() != layer.inputs * layer.outputs ||
            layer.biases.size() != layer.outputs)
            throw Error(ErrorCode::DimensionMismatch, "Mlp: layer " + std::to_string(l) + " has inconsistent shape");
        if (l > 0 && layers_[l - 1].outputs != layer.inputs)
            throw Error(ErrorCode::DimensionMismatch, "Mlp: layer " + std::to_string(l) + " does not chain");
    }
    if (layers_.back().outputs != 1) throw Error(ErrorCode::DimensionMismatch, "Mlp: output layer must be scalar");
}

Mlp Mlp::init(std::size_t input_dim, const TrainConfig &cfg) {
    const std::size_t sizes[] = {input_dim, kHiddenWidths[0], kHiddenWidths[1], 1};
    Mlp m = init(sizes, cfg.seed);
    m.info.training_seed = cfg.seed;
    return m;
}

Mlp Mlp::init(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2 || layer_sizes.front() == 0)
        throw Error(ErrorCode::InvalidArgument, "Mlp::init: need an input width >= 1 and at least one layer");
    Rng rng(seed, 0);
    std::vector<DenseLayer> layers;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        DenseLayer layer(layer_sizes[l], layer_sizes[l + 1]);
        const double stddev = std::sqrt(2.0 / static_cast<double>(layer.inputs));
        for (auto &w : layer.weights) w = stddev * rng.normal();
        layers.push_back(std::move(layer));
    }
    return Mlp(std::move(layers));
}

std::vector<std::size_t> Mlp::layer_sizes() const {
    std::vector<std::size_t> sizes{layers_.front().inputs};
    for (const auto &layer : layers_) sizes.push_back(layer.outputs);
    return sizes;
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const auto &layer : layers_) n += layer.weights.size() + layer.biases.size();
    return n;
}

double Mlp::forward(std::span<const double> x) const {
    check_input(*this, x);
    Trace t = make_trace(*this);
    return run_forward(*this, x, t);
}

Gradient gradient(const Mlp &m, std::span<const Example> batch) {
    if (batch.empty()) throw Error(ErrorCode::EmptyDataset, "gradient: empty batch");
    Gradient g = zero_gradient(m);
    Trace t = make_trace(m);
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto &ex : batch) {
        check_input(m, ex.features);
        const double err = run_forward(m, ex.features, t) - ex.target;
        g.loss += err * err * scale;
        accumulate_backward(m, t, err, scale, g);
    }
    return g;
}

std::vector<double> predict(const Mlp &m, const Dataset &d) {
    Trace t = make_trace(m);
    std::vector<double> out;
    out.reserve(d.count());
    for (const auto &r : d.records) {
        check_input(m, r.values);
        out.push_back(run_forward(m, r.values, t));
    }
    return out;
}

double mean_squared_error(const Mlp &m, const Dataset &d) {
    if (d.records.empty()) throw Error(ErrorCode::EmptyDataset, "mean_squared_error: empty dataset");
    const std::vector<double> pred = predict(m, d);
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double e = pred[i] - d.records[i].negativity;
        s += e * e;
    }
    return s / static_cast<double>(pred.size());
}

EarlyStopping::EarlyStopping(int patience) : patience_(patience) {
    if (patience < 1) throw Error(ErrorCode::InvalidArgument, "patience must be >= 1");
}

bool EarlyStopping::observe(double loss) {
    ++epochs_;
    improved_last_ = loss < best_loss_;
    if (improved_last_) {
        best_loss_ = loss;
        best_epoch_ = epochs_;
        stale_ = 0;
    } else {
        ++stale_;
    }
    return stale_ >= patience_;
}

TrainResult train(Mlp model, const Dataset &train_set, const Dataset &validation_set, const TrainConfig &cfg) {
    if (train_set.records.empty() || validation_set.records.empty())
        throw Error(ErrorCode::EmptyDataset, "train: training and validation sets must be non-empty");
    if (train_set.kind != validation_set.kind || train_set.preset.pairs != validation_set.preset.pairs)
        throw Error(ErrorCode::InvalidPreset, "preset mismatch between training and validation data");
    if (train_set.preset.size() != model.input_dim())
        throw Error(ErrorCode::DimensionMismatch, "train: model input width " + std::to_string(model.input_dim()) +
                                                      " does not match " + std::to_string(train_set.preset.size()) +
                                                      " features");
    if (cfg.batch_size == 0 || cfg.batch_size > train_set.count())
        throw Error(ErrorCode::InvalidArgument, "train: batch size must be in 1..training-set size");
    if (cfg.max_epochs < 1) throw Error(ErrorCode::InvalidArgument, "train: max_epochs must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "train: learning rate must be positive");

    EarlyStopping stopper(cfg.patience);
    Adam adam(model, cfg);
    Rng shuffle_rng(cfg.seed, 1);
    std::vector<std::size_t> order(train_set.count());
    std::iota(order.begin(), order.end(), 0);

    Gradient g = zero_gradient(model);
    Trace t = make_trace(model);
    Mlp best = model;
    TrainResult result{model, {}, false};

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng.below(i)]);

        double sq_sum = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            const double scale = 1.0 / static_cast<double>(stop - start);
            reset(g);
            for (std::size_t k = start; k < stop; ++k) {
                const FeatureVector &r = train_set.records[order[k]];
                const double err = run_forward(model, r.values, t) - r.negativity;
                sq_sum += err * err;
                accumulate_backward(model, t, err, scale, g);
            }
            adam.step(model, g);
        }
        const double train_mse = sq_sum / static_cast<double>(order.size());
        if (!std::isfinite(train_mse) || !all_finite(model))
            throw Error(ErrorCode::DivergedTraining, "training loss became non-finite at epoch " + std::to_string(epoch));

        const double val_mse = mean_squared_error(model, validation_set);
        result.history.push_back({epoch, train_mse, val_mse});
        const bool stop = stopper.observe(val_mse);
        if (stopper.improved_last()) best = model;
        if (stop) {
            result.stopped_early = true;
            break;
        }
    }

    result.model = std::move(best);
    result.model.info.preset = train_set.preset.name;
    result.model.info.training_seed = cfg.seed;
    result.model.info.epochs_run = stopper.epochs();
    result.model.info.best_epoch = stopper.best_epoch();
    result.model.info.validation_loss = stopper.best_loss();
    return result;
}

void save_model(const Mlp &m, const std::filesystem::path &path) {
    json layers = json::array();
    for (const auto &layer : m.layers()) {
        json rows = json::array();
        for (std::size_t o = 0; o < layer.outputs; ++o)
            rows.push_back(std::vector<double>(layer.weights.begin() + static_cast<std::ptrdiff_t>(o * layer.inputs),
                                               layer.weights.begin() + static_cast<std::ptrdiff_t>((o + 1) * layer.inputs)));
        layers.push_back({{"weights", rows}, {"biases", layer.biases}});
    }
    json meta = {{"preset", m.info.preset},
                 {"training_seed", m.info.training_seed},
                 {"epochs_run", m.info.epochs_run},
                 {"best_epoch", m.info.best_epoch}};
    if (std::isfinite(m.info.validation_loss))
        meta["validation_loss"] = m.info.validation_loss;
    else
        meta["validation_loss"] = nullptr;
    const json doc = {{"format", "cewlab-mlp"},
                      {"version", 1},
                      {"layer_sizes", m.layer_sizes()},
                      {"activation", std::string(Mlp::activation())},
                      {"layers", layers},
                      {"metadata", meta}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << doc.dump(1) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Mlp load_model(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    try {
        const json doc = json::parse(in);
        if (doc.at("format") != "cewlab-mlp") throw Error(ErrorCode::FormatError, "not a cewlab model file");
        if (doc.at("activation") != Mlp::activation())
            throw Error(ErrorCode::FormatError, "unsupported activation " + doc.at("activation").dump());
        const auto sizes = doc.at("layer_sizes").get<std::vector<std::size_t>>();
        const json &jl = doc.at("layers");
        if (sizes.size() != jl.size() + 1) throw Error(ErrorCode::FormatError, "layer_sizes does not match layers");
        std::vector<DenseLayer> layers;
        for (std::size_t l = 0; l < jl.size(); ++l) {
            DenseLayer layer(sizes[l], sizes[l + 1]);
            const json &rows = jl[l].at("weights");
            if (rows.size() != layer.outputs) throw Error(ErrorCode::FormatError, "weight row count mismatch");
            for (std::size_t o = 0; o < layer.outputs; ++o) {
                const auto row = rows[o].get<std::vector<double>>();
                if (row.size() != layer.inputs) throw Error(ErrorCode::FormatError, "weight column count mismatch");
                std::copy(row.begin(), row.end(), layer.weights.begin() + static_cast<std::ptrdiff_t>(o * layer.inputs));
            }
            layer.biases = jl[l].at("biases").get<std::vector<double>>();
            if (layer.biases.size() != layer.outputs) throw Error(ErrorCode::FormatError, "bias length mismatch");
            layers.push_back(std::move(layer));
        }
        Mlp m(std::move(layers));
        const json &meta = doc.at("metadata");
        m.info.preset = meta.at("preset").get<std::string>();
        m.info.training_seed = meta.at("training_seed").get<std::uint64_t>();
        m.info.epochs_run = meta.at("epochs_run").get<int>();
        m.info.best_epoch = meta.at("best_epoch").get<int>();
        if (!meta.at("validation_loss").is_null()) m.info.validation_loss = meta.at("validation_loss").get<double>();
        return m;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::FormatError, path.string() + ": " + e.what());
    } catch (const Error &e) {
        throw Error(ErrorCode::FormatError, path.string() + ": " + e.what());
    }
}

}  // namespace cewlab
