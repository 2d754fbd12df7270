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

#include "commands.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cewlab/dataset.h"
#include "cewlab/error.h"
#include "cewlab/eval.h"
#include "cewlab/measure.h"
#include "cewlab/model.h"
#include "cewlab/pipeline.h"
#include "cewlab/states.h"

#ifndef CEWLAB_VERSION
#define CEWLAB_VERSION "dev"
#endif

namespace cewlab::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Bad flag values detected before any work starts; exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Records how an artifact was produced. Written next to every output.
class Manifest {
   public:
    Manifest(std::string command, const std::vector<std::string> &args)
        : doc_{{"command", std::move(command)}, {"argv", args}, {"version", CEWLAB_VERSION}, {"started_utc", utc_now()}},
          start_(Clock::now()) {
        doc_["flags"] = json::object();
        doc_["inputs"] = json::array();
        doc_["outputs"] = json::array();
    }

    json &flags() { return doc_["flags"]; }
    void input(const fs::path &p) { doc_["inputs"].push_back(p.string()); }
    void output(const fs::path &p) { doc_["outputs"].push_back(p.string()); }

    void write(const fs::path &path) {
        doc_["duration_seconds"] = std::chrono::duration<double>(Clock::now() - start_).count();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write manifest " + path.string());
        out << doc_.dump(1) << '\n';
    }

   private:
    json doc_;
    Clock::time_point start_;
};

fs::path manifest_for(const fs::path &artifact) {
    fs::path p = artifact;
    p += ".manifest.json";
    return p;
}

SystemKind usage_kind(const std::string &name) {
    try {
        return parse_kind(name);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

MeasurementPreset usage_preset(SystemKind kind, const std::string &name) {
    try {
        return find_preset(kind, name);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
}

std::vector<MeasurementPreset> usage_preset_list(SystemKind kind, const std::vector<std::string> &names) {
    std::vector<MeasurementPreset> out;
    for (const auto &n : names) {
        if (n == "all") {
            const auto &all = builtin_presets(kind);
            out.insert(out.end(), all.begin(), all.end());
        } else {
            out.push_back(usage_preset(kind, n));
        }
    }
    if (out.empty()) throw UsageError("empty preset list");
    return out;
}

struct TrainFlags {
    double learning_rate = TrainConfig{}.learning_rate;
    std::size_t batch_size = TrainConfig{}.batch_size;
    int max_epochs = TrainConfig{}.max_epochs;
    int patience = TrainConfig{}.patience;
    std::uint64_t seed = 0;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--lr", learning_rate, "Adam learning rate")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--batch-size", batch_size, "mini-batch size")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--max-epochs", max_epochs, "epoch limit")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--patience", patience, "epochs without validation improvement before stopping")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    }

    TrainConfig config() const {
        TrainConfig cfg;
        cfg.learning_rate = learning_rate;
        cfg.batch_size = batch_size;
        cfg.max_epochs = max_epochs;
        cfg.patience = patience;
        cfg.seed = seed;
        return cfg;
    }

    void record(json &flags) const {
        flags["lr"] = learning_rate;
        flags["batch_size"] = batch_size;
        flags["max_epochs"] = max_epochs;
        flags["patience"] = patience;
        flags["train_seed"] = seed;
    }
};

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"machine-designed collective entanglement witnesses", "cewlab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", CEWLAB_VERSION);

    // gen
    std::string gen_kind = "two-qubit", gen_preset, gen_out;
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    bool gen_unbalanced = false;
    auto *gen = app.add_subcommand("gen", "sample states and write a feature dataset");
    gen->add_option("--kind", gen_kind, "two-qubit | qubit-qutrit")->capture_default_str();
    gen->add_option("--preset", gen_preset, "measurement preset, e.g. B10")->required();
    gen->add_option("--n", gen_n, "number of records")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "generation seed")->required();
    gen->add_option("--out", gen_out, "output CSV path")->required();
    gen->add_flag("--unbalanced", gen_unbalanced, "keep the natural prevalence instead of a 50/50 quota");

    // train
    std::string train_file, val_file, model_out;
    TrainFlags train_flags;
    auto *train_cmd = app.add_subcommand("train", "fit a negativity regressor");
    train_cmd->add_option("--train", train_file, "training dataset")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--validation", val_file, "validation dataset")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--out", model_out, "model output path")->required();
    train_cmd->add_option("--seed", train_flags.seed, "initialisation and shuffling seed")->required();
    train_flags.add_to(train_cmd);

    // eval
    std::string eval_model, eval_test, eval_out, eval_svg;
    auto *eval = app.add_subcommand("eval", "ROC evaluation of a model on a test set");
    eval->add_option("--model", eval_model, "model file")->required()->check(CLI::ExistingFile);
    eval->add_option("--test", eval_test, "test dataset")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", eval_out, "ROC table output path")->required();
    eval->add_option("--svg", eval_svg, "optional SVG plot path");

    // baselines
    std::string base_kind = "two-qubit";
    std::size_t base_n = 10000;
    std::uint64_t base_seed = 0;
    std::vector<std::string> base_witnesses;
    auto *baselines = app.add_subcommand("baselines", "sensitivity of analytic witnesses on fresh balanced states");
    baselines->add_option("--kind", base_kind, "two-qubit | qubit-qutrit")->capture_default_str();
    baselines->add_option("--n", base_n, "number of balanced states")->capture_default_str()->check(CLI::PositiveNumber);
    baselines->add_option("--seed", base_seed, "generation seed")->required();
    baselines->add_option("--witness", base_witnesses, "negativity | chsh | fef (repeatable; default: all applicable)");

    // sweep
    std::string sweep_kind = "two-qubit", sweep_out;
    std::vector<std::string> sweep_presets;
    std::size_t sweep_train = 40000, sweep_val = 10000, sweep_test = 10000;
    std::uint64_t sweep_seed = 0;
    bool sweep_svg = false;
    TrainFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "train and evaluate one model per preset on shared splits");
    sweep->add_option("--kind", sweep_kind, "two-qubit | qubit-qutrit")->capture_default_str();
    sweep->add_option("--presets", sweep_presets, "comma-separated presets, or 'all'")->required()->delimiter(',');
    sweep->add_option("--n-train", sweep_train, "training records")->capture_default_str();
    sweep->add_option("--n-validation", sweep_val, "validation records")->capture_default_str();
    sweep->add_option("--n-test", sweep_test, "test records")->capture_default_str();
    sweep->add_option("--seed", sweep_seed, "generation seed (training uses seed + 1)")->required();
    sweep->add_option("--out-dir", sweep_out, "output directory")->required();
    sweep->add_flag("--svg", sweep_svg, "also write an SVG plot per ROC curve");
    sweep_flags.add_to(sweep);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const SystemKind kind = usage_kind(gen_kind);
            const MeasurementPreset preset = usage_preset(kind, gen_preset);
            if (!gen_unbalanced && gen_n % 2 != 0) throw UsageError("--n must be even for a balanced dataset");
            Manifest manifest("gen", args);
            manifest.flags() = {{"kind", gen_kind}, {"preset", gen_preset}, {"n", gen_n},
                                {"seed", gen_seed}, {"unbalanced", gen_unbalanced}};
            GenerationStats stats;
            const Dataset d = gen_unbalanced ? generate_unbalanced(kind, preset, gen_n, gen_seed, &stats)
                                             : generate_balanced(kind, preset, gen_n, gen_seed, &stats);
            save_dataset(d, gen_out);
            manifest.output(gen_out);
            manifest.output(sidecar_path(gen_out));
            manifest.write(manifest_for(gen_out));
            out << "records=" << d.count() << " entangled=" << d.entangled_count()
                << " prevalence_entangled=" << d.entangled_fraction() << " draws=" << stats.draws
                << " degenerate=" << stats.degenerate << '\n';
        } else if (train_cmd->parsed()) {
            Manifest manifest("train", args);
            train_flags.record(manifest.flags());
            manifest.input(train_file);
            manifest.input(val_file);
            const Dataset train_set = load_dataset(train_file);
            const Dataset val_set = load_dataset(val_file);
            if (train_set.kind != val_set.kind || train_set.preset.pairs != val_set.preset.pairs)
                throw Error(ErrorCode::InvalidPreset, "preset mismatch: training uses '" + train_set.preset.name +
                                                          "', validation uses '" + val_set.preset.name + "'");
            const TrainConfig cfg = train_flags.config();
            const TrainResult r = train(Mlp::init(train_set.preset.size(), cfg), train_set, val_set, cfg);
            out << "epoch,train_mse,validation_mse\n";
            out.precision(10);
            for (const auto &h : r.history) out << h.epoch << ',' << h.train_mse << ',' << h.validation_mse << '\n';
            out << "# best_epoch=" << r.model.info.best_epoch << " epochs_run=" << r.model.info.epochs_run
                << " stopped_early=" << (r.stopped_early ? 1 : 0) << '\n';
            save_model(r.model, model_out);
            manifest.output(model_out);
            manifest.write(manifest_for(model_out));
        } else if (eval->parsed()) {
            Manifest manifest("eval", args);
            manifest.input(eval_model);
            manifest.input(eval_test);
            const Mlp model = load_model(eval_model);
            const Dataset test = load_dataset(eval_test);
            const EvalSummary s = evaluate_model(model, test);
            write_roc(s.roc, fs::path(eval_out));
            manifest.output(eval_out);
            if (!eval_svg.empty()) {
                write_roc_svg(s.roc, eval_svg, std::string(kind_name(test.kind)) + " " + test.preset.name);
                manifest.output(eval_svg);
            }
            manifest.write(manifest_for(eval_out));
            out.precision(6);
            out << "AUC=" << s.roc.auc << " TPR@FPR0.10=" << s.tpr_at_fpr_10 << " TPR@FPR0=" << s.tpr_at_fpr_0 << '\n';
        } else if (baselines->parsed()) {
            const SystemKind kind = usage_kind(base_kind);
            std::vector<Witness> witnesses;
            try {
                for (const auto &w : base_witnesses) witnesses.push_back(parse_witness(w));
            } catch (const Error &e) {
                throw UsageError(e.what());
            }
            if (witnesses.empty()) {
                for (Witness w : {Witness::NegativityOracle, Witness::Chsh, Witness::Fef})
                    if (witness_applicable(w, kind)) witnesses.push_back(w);
            }
            for (Witness w : witnesses)
                if (!witness_applicable(w, kind))
                    throw UsageError(std::string(witness_name(w)) + " is defined for two-qubit states only");
            if (base_n % 2 != 0) throw UsageError("--n must be even");

            const Dataset d = generate_balanced(kind, builtin_presets(kind).front(), base_n, base_seed);
            out << "witness,sensitivity,fpr,positives,negatives\n";
            bool selective = true;
            for (Witness w : witnesses) {
                const BaselineResult r = baseline_sensitivity(d, w);
                out << witness_name(w) << ',' << fixed(r.sensitivity(), 4) << ',' << fixed(r.fpr(), 4) << ','
                    << r.positives << ',' << r.negatives << '\n';
                if (r.false_positives != 0) {
                    err << "error: " << witness_name(w) << " flagged " << r.false_positives
                        << " separable states as entangled\n";
                    selective = false;
                }
            }
            return selective ? kExitOk : kExitRuntime;
        } else if (sweep->parsed()) {
            const SystemKind kind = usage_kind(sweep_kind);
            SweepConfig cfg;
            cfg.kind = kind;
            cfg.presets = usage_preset_list(kind, sweep_presets);
            if ((sweep_train + sweep_val + sweep_test) % 2 != 0) throw UsageError("total record count must be even");
            if (sweep_train == 0 || sweep_val == 0 || sweep_test == 0) throw UsageError("split sizes must be positive");
            cfg.n_train = sweep_train;
            cfg.n_validation = sweep_val;
            cfg.n_test = sweep_test;
            cfg.seed = sweep_seed;
            sweep_flags.seed = sweep_seed + 1;
            cfg.train = sweep_flags.config();
            cfg.out_dir = fs::path(sweep_out);
            cfg.svg = sweep_svg;
            cfg.log = &err;

            Manifest manifest("sweep", args);
            manifest.flags() = {{"kind", sweep_kind},    {"presets", sweep_presets}, {"n_train", sweep_train},
                                {"n_validation", sweep_val}, {"n_test", sweep_test},   {"seed", sweep_seed},
                                {"svg", sweep_svg}};
            sweep_flags.record(manifest.flags());
            const SweepResult r = run_sweep(cfg);
            for (const char *f : {"train.csv", "validation.csv", "test.csv", "summary.csv"})
                manifest.output(fs::path(sweep_out) / f);
            for (const auto &e : r.entries) {
                manifest.output(fs::path(sweep_out) / ("model_" + e.preset.name + ".mlp.json"));
                manifest.output(fs::path(sweep_out) / ("roc_" + e.preset.name + ".csv"));
            }
            manifest.write(fs::path(sweep_out) / "manifest.json");

            out << "preset,B,auc,tpr_at_fpr_0.10,tpr_at_fpr_0\n";
            for (const auto &e : r.entries)
                out << e.preset.name << ',' << e.preset.size() << ',' << fixed(e.summary.roc.auc, 4) << ','
                    << fixed(e.summary.tpr_at_fpr_10, 4) << ',' << fixed(e.summary.tpr_at_fpr_0, 4) << '\n';
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace cewlab::cli
