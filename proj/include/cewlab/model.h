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

#ifndef CEWLAB_MODEL_H
#define CEWLAB_MODEL_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cewlab/dataset.h"

namespace cewlab {

/// Fully connected layer; weights are outputs x inputs, row-major.
struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    DenseLayer() = default;
    DenseLayer(std::size_t in, std::size_t out) : inputs(in), outputs(out), weights(in * out), biases(out) {}

    double &w(std::size_t row, std::size_t col) { return weights[row * inputs + col]; }
    double w(std::size_t row, std::size_t col) const { return weights[row * inputs + col]; }

    friend bool operator==(const DenseLayer &, const DenseLayer &) = default;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::size_t batch_size = 256;
    int max_epochs = 200;
    int patience = 5;
    std::uint64_t seed = 0;
};

struct ModelInfo {
    std::string preset;
    std::uint64_t training_seed = 0;
    int epochs_run = 0;
    int best_epoch = 0;
    double validation_loss = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr std::size_t kHiddenWidths[] = {32, 16};

/// Regressor B -> 32 -> 16 -> 1 with rectified hidden units and an affine
/// output. Other depths are accepted for tests; every hidden layer uses ReLU
/// and the last layer must have one output.
class Mlp {
   public:
    explicit Mlp(std::vector<DenseLayer> layers);

    /// He-normal weights (std = sqrt(2 / fan_in)) from Rng(cfg.seed, 0),
    /// zero biases.
    static Mlp init(std::size_t input_dim, const TrainConfig &cfg);
    static Mlp init(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

    std::size_t input_dim() const { return layers_.front().inputs; }
    std::vector<std::size_t> layer_sizes() const;
    std::size_t parameter_count() const;
    static constexpr std::string_view activation() { return "relu"; }

    /// Throws DimensionMismatch when x.size() != input_dim().
    double forward(std::span<const double> x) const;

    std::vector<DenseLayer> &layers() { return layers_; }
    const std::vector<DenseLayer> &layers() const { return layers_; }

    ModelInfo info;

    friend bool operator==(const Mlp &a, const Mlp &b) { return a.layers_ == b.layers_; }

   private:
    std::vector<DenseLayer> layers_;
};

struct Example {
    std::span<const double> features;
    double target;
};

/// Same shape as the model; holds d(loss)/d(parameter).
struct Gradient {
    std::vector<DenseLayer> layers;
    double loss = 0.0;
};

/// Exact gradient of the batch mean squared error (1/N) sum (f(x) - y)^2 by
/// backpropagation. loss is filled with the batch MSE.
Gradient gradient(const Mlp &m, std::span<const Example> batch);

double mean_squared_error(const Mlp &m, const Dataset &d);

/// Raw (unclamped) model outputs for every record.
std::vector<double> predict(const Mlp &m, const Dataset &d);

/// Tracks the best monitored loss and counts epochs without strict
/// improvement. Epochs are numbered from 1.
class EarlyStopping {
   public:
    explicit EarlyStopping(int patience);

    /// Records one epoch; true if training should stop now.
    bool observe(double loss);
    bool improved_last() const noexcept { return improved_last_; }
    int best_epoch() const noexcept { return best_epoch_; }
    double best_loss() const noexcept { return best_loss_; }
    int epochs() const noexcept { return epochs_; }

   private:
    int patience_;
    int epochs_ = 0;
    int stale_ = 0;
    int best_epoch_ = 0;
    double best_loss_ = std::numeric_limits<double>::infinity();
    bool improved_last_ = false;
};

struct EpochRecord {
    int epoch;
    double train_mse;
    double validation_mse;
};

struct TrainResult {
    Mlp model;
    std::vector<EpochRecord> history;
    bool stopped_early = false;
};

/// Mini-batch Adam on the negativity targets with early stopping on the
/// validation MSE. Returns the weights of the best validation epoch. Batch
/// order comes from Rng(cfg.seed, 1), so the result is a pure function of
/// its inputs. Throws EmptyDataset, InvalidPreset (datasets disagree),
/// DimensionMismatch, InvalidArgument (bad config) or DivergedTraining.
TrainResult train(Mlp model, const Dataset &train_set, const Dataset &validation_set, const TrainConfig &cfg);

void save_model(const Mlp &m, const std::filesystem::path &path);
/// Throws IoError or FormatError.
Mlp load_model(const std::filesystem::path &path);

}  // namespace cewlab

#endif  // CEWLAB_MODEL_H
