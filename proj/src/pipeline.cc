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

#include "cewlab/pipeline.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "cewlab/error.h"

namespace cewlab {
namespace {

bool contains_pair(const MeasurementPreset &p, EffectPair pair) {
    return std::any_of(p.pairs.begin(), p.pairs.end(), [&](const EffectPair &q) {
        return q == pair || (q.first == pair.second && q.second == pair.first);
    });
}

// The complete preset when it covers everything requested, otherwise the
// ordered union of the requested pairs.
MeasurementPreset generation_preset(SystemKind kind, const std::vector<MeasurementPreset> &presets) {
    const MeasurementPreset &complete = complete_preset(kind);
    MeasurementPreset merged{kind, "union", {}};
    bool covered = true;
    for (const auto &p : presets)
        for (const auto &pair : p.pairs) {
            covered = covered && contains_pair(complete, pair);
            if (!contains_pair(merged, pair)) merged.pairs.push_back(pair);
        }
    return covered ? complete : merged;
}

}  // namespace

EvalSummary evaluate_model(const Mlp &m, const Dataset &test) {
    if (m.input_dim() != test.preset.size())
        throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(m.input_dim()) +
                                                      " features but the test set has " +
                                                      std::to_string(test.preset.size()));
    std::vector<double> scores = predict(m, test);
    std::vector<bool> labels;
    labels.reserve(test.count());
    double sq = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double e = scores[i] - test.records[i].negativity;
        sq += e * e;
        scores[i] = std::clamp(scores[i], 0.0, 0.5);
        labels.push_back(test.records[i].entangled);
    }
    EvalSummary s;
    s.roc = roc_curve(scores, labels);
    s.tpr_at_fpr_10 = tpr_at_fpr(s.roc, 0.10);
    s.tpr_at_fpr_0 = tpr_at_fpr(s.roc, 0.0);
    s.mse = sq / static_cast<double>(scores.size());
    return s;
}

SweepResult run_sweep(const SweepConfig &cfg) {
    if (cfg.presets.empty()) throw Error(ErrorCode::InvalidArgument, "sweep: empty preset list");
    for (const auto &p : cfg.presets) {
        if (p.kind != cfg.kind) throw Error(ErrorCode::InvalidPreset, "sweep: preset '" + p.name + "' has the wrong kind");
        validate_preset(p);
    }
    const std::size_t total = cfg.n_train + cfg.n_validation + cfg.n_test;
    if (total == 0 || total % 2 != 0) throw Error(ErrorCode::InvalidArgument, "sweep: total sample count must be even");

    const MeasurementPreset source = generation_preset(cfg.kind, cfg.presets);
    if (cfg.log) *cfg.log << "generating " << total << " balanced " << kind_name(cfg.kind) << " records\n";
    const Dataset all = generate_balanced(cfg.kind, source, total, cfg.seed);
    const double t = static_cast<double>(total);
    const Splits splits = split(all, {static_cast<double>(cfg.n_train) / t, static_cast<double>(cfg.n_validation) / t,
                                      static_cast<double>(cfg.n_test) / t});

    if (cfg.out_dir) {
        std::filesystem::create_directories(*cfg.out_dir);
        save_dataset(splits.train, *cfg.out_dir / "train.csv");
        save_dataset(splits.validation, *cfg.out_dir / "validation.csv");
        save_dataset(splits.test, *cfg.out_dir / "test.csv");
    }

    SweepResult result;
    for (const auto &preset : cfg.presets) {
        const Dataset train_set = project(splits.train, preset);
        const Dataset val_set = project(splits.validation, preset);
        const Dataset test_set = project(splits.test, preset);
        TrainResult trained = train(Mlp::init(preset.size(), cfg.train), train_set, val_set, cfg.train);
        SweepEntry entry{preset, evaluate_model(trained.model, test_set), trained.model.info.epochs_run,
                         trained.model.info.best_epoch};
        if (cfg.log)
            *cfg.log << preset.name << ": epochs=" << entry.epochs_run << " best=" << entry.best_epoch
                     << " auc=" << entry.summary.roc.auc << " tpr@fpr0.10=" << entry.summary.tpr_at_fpr_10 << '\n';
        if (cfg.out_dir) {
            save_model(trained.model, *cfg.out_dir / ("model_" + preset.name + ".mlp.json"));
            write_roc(entry.summary.roc, *cfg.out_dir / ("roc_" + preset.name + ".csv"));
            if (cfg.svg)
                write_roc_svg(entry.summary.roc, *cfg.out_dir / ("roc_" + preset.name + ".svg"),
                              std::string(kind_name(cfg.kind)) + " " + preset.name);
        }
        result.entries.push_back(std::move(entry));
    }

    if (cfg.out_dir) {
        std::ofstream out(*cfg.out_dir / "summary.csv", std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write summary.csv");
        out << "preset,B,auc,tpr_at_fpr_0.10,tpr_at_fpr_0,test_mse,epochs,best_epoch\n";
        out.precision(17);
        for (const auto &e : result.entries)
            out << e.preset.name << ',' << e.preset.size() << ',' << e.summary.roc.auc << ','
                << e.summary.tpr_at_fpr_10 << ',' << e.summary.tpr_at_fpr_0 << ',' << e.summary.mse << ','
                << e.epochs_run << ',' << e.best_epoch << '\n';
    }
    return result;
}

}  // namespace cewlab
