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

#ifndef CEWLAB_MEASURE_H
#define CEWLAB_MEASURE_H

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cewlab/qlinalg.h"
#include "cewlab/states.h"

namespace cewlab {

/// One positive operator of a local measurement set. index is 1-based.
struct LocalEffect {
    int index;
    CMat mat;
};

/// Four subnormalised qubit effects (trace 1/2) whose Bloch vectors form a
/// regular tetrahedron; they sum to the identity.
const std::vector<LocalEffect> &qubit_tetrahedron();

/// Nine rank-1 qutrit projectors for minimal qutrit tomography; they sum to
/// three times the identity.
const std::vector<LocalEffect> &qutrit_nine();

/// The local set measured on subsystem 2 of the given kind.
const std::vector<LocalEffect> &local_effects(SystemKind kind);

/// |Psi-><Psi-| with |Psi-> = (|01> - |10>)/sqrt(2).
const CMat &bell_singlet();

/// Probability of a singlet outcome on the Bell pair, conditioned on the
/// local outcomes x (position 1) and y (position 4):
///
///   Tr[rho_T (x (x) Pi_Bell (x) y)] / Tr[rho_T (x (x) 1 (x) y)].
///
/// Throws DimensionMismatch if the effects do not match the local dimension
/// and DegenerateConditioning if the denominator is below 1e-12.
double p_xy(const CollectiveState &rho_t, const LocalEffect &x, const LocalEffect &y);

using EffectPair = std::pair<int, int>;

struct MeasurementPreset {
    SystemKind kind;
    std::string name;
    std::vector<EffectPair> pairs;

    std::size_t size() const noexcept { return pairs.size(); }
};

/// Checks index ranges, uniqueness up to (x, y) ~ (y, x), and the maximum
/// number of independent pairs. Throws InvalidPreset.
void validate_preset(const MeasurementPreset &preset);

/// The measurement configurations tabulated for each system kind, in
/// increasing B: two-qubit B1, B3, B5, B7, B10; qubit-qutrit B1, B5, B9,
/// B13, B45.
const std::vector<MeasurementPreset> &builtin_presets(SystemKind kind);

/// Throws UnknownPreset.
const MeasurementPreset &find_preset(SystemKind kind, std::string_view name);

/// The builtin preset with every independent pair (B10 or B45).
const MeasurementPreset &complete_preset(SystemKind kind);

struct FeatureVector {
    std::vector<double> values;
    double negativity = 0.0;
    bool entangled = false;

    friend bool operator==(const FeatureVector &, const FeatureVector &) = default;
};

/// Feature values in preset order plus the negativity labels.
/// Propagates DegenerateConditioning.
FeatureVector features(const DensityMatrix &rho, const MeasurementPreset &preset);

}  // namespace cewlab

#endif  // CEWLAB_MEASURE_H
