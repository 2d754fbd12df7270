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

#ifndef CEWLAB_DATASET_H
#define CEWLAB_DATASET_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cewlab/measure.h"
#include "cewlab/states.h"

namespace cewlab {

/// Feature vectors of sampled states under one measurement preset.
///
/// Density matrices are not stored. Record i was drawn from
/// Rng(seed, draw_indices[i]) and can be regenerated from that pair.
struct Dataset {
    SystemKind kind = SystemKind::TwoQubit;
    MeasurementPreset preset;
    std::uint64_t seed = 0;
    bool balanced = false;
    std::vector<FeatureVector> records;
    std::vector<std::uint64_t> draw_indices;

    std::size_t count() const noexcept { return records.size(); }
    std::size_t entangled_count() const;
    double entangled_fraction() const;

    friend bool operator==(const Dataset &a, const Dataset &b) {
        return a.kind == b.kind && a.preset.name == b.preset.name && a.preset.pairs == b.preset.pairs &&
               a.seed == b.seed && a.balanced == b.balanced && a.records == b.records &&
               a.draw_indices == b.draw_indices;
    }
};

struct GenerationStats {
    std::uint64_t draws = 0;
    std::uint64_t degenerate = 0;
};

/// Exactly n/2 entangled and n/2 separable records by rejection: draw i uses
/// stream i and is kept iff its class quota is still open. Draws whose
/// features hit DegenerateConditioning are discarded. n must be even and
/// positive.
Dataset generate_balanced(SystemKind kind, const MeasurementPreset &preset, std::size_t n, std::uint64_t seed,
                          GenerationStats *stats = nullptr);

/// The first n non-degenerate draws, at the ensemble's natural prevalence.
Dataset generate_unbalanced(SystemKind kind, const MeasurementPreset &preset, std::size_t n, std::uint64_t seed,
                            GenerationStats *stats = nullptr);

/// Re-samples the density matrix behind record i.
DensityMatrix regenerate_state(const Dataset &d, std::size_t record);

struct SplitFractions {
    double train;
    double validation;
    double test;
};

struct Splits {
    Dataset train;
    Dataset validation;
    Dataset test;
};

/// Stratified, order-preserving partition. Each class is cut separately at
/// round(count * fraction) so every part keeps the parent's class balance.
/// Throws InvalidArgument for bad fractions and EmptyDataset if any part
/// would be empty.
Splits split(const Dataset &d, SplitFractions fractions);

/// Restricts the features to the pairs of a sub-preset, in its order.
/// Throws InvalidPreset if a pair is not present in d.preset.
Dataset project(const Dataset &d, const MeasurementPreset &preset);

/// Writes a CSV table "f1,...,fB,negativity,label" to path and a JSON
/// sidecar to path + ".meta". Floats are written as shortest round-trip
/// decimals. Throws IoError.
void save_dataset(const Dataset &d, const std::filesystem::path &path);

/// Throws IoError or FormatError (with the offending line number).
Dataset load_dataset(const std::filesystem::path &path);

std::filesystem::path sidecar_path(const std::filesystem::path &path);

}  // namespace cewlab

#endif  // CEWLAB_DATASET_H
