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

#ifndef CEWLAB_PIPELINE_H
#define CEWLAB_PIPELINE_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "cewlab/dataset.h"
#include "cewlab/eval.h"
#include "cewlab/model.h"

namespace cewlab {

struct EvalSummary {
    RocCurve roc;
    double tpr_at_fpr_10 = 0.0;
    double tpr_at_fpr_0 = 0.0;
    double mse = 0.0;
};

/// Scores the test set with predictions clamped to [0, 0.5].
/// Throws DimensionMismatch if the model width differs from the features.
EvalSummary evaluate_model(const Mlp &m, const Dataset &test);

struct SweepConfig {
    SystemKind kind = SystemKind::TwoQubit;
    std::vector<MeasurementPreset> presets;
    std::size_t n_train = 40000;
    std::size_t n_validation = 10000;
    std::size_t n_test = 10000;
    std::uint64_t seed = 0;
    TrainConfig train;
    /// When set, splits, models, ROC tables and summary.csv are written here.
    std::optional<std::filesystem::path> out_dir;
    bool svg = false;
    /// Progress lines; may be null.
    std::ostream *log = nullptr;
};

struct SweepEntry {
    MeasurementPreset preset;
    EvalSummary summary;
    int epochs_run = 0;
    int best_epoch = 0;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
};

/// Generates one balanced dataset over the union of the presets' pairs,
/// splits it once (stratified), and trains and evaluates one model per
/// preset on the shared splits. Throws InvalidArgument for an empty preset
/// list or an odd total size.
SweepResult run_sweep(const SweepConfig &cfg);

}  // namespace cewlab

#endif  // CEWLAB_PIPELINE_H
