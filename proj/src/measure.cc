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

#include "cewlab/measure.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <set>

#include "cewlab/error.h"

namespace cewlab {
namespace {

constexpr double kDegenerateDenominator = 1e-12;

std::vector<LocalEffect> make_tetrahedron() {
    const double k = 1.0 / std::numbers::sqrt3;
    const int signs[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<LocalEffect> out;
    for (int i = 0; i < 4; ++i) {
        CMat m = pauli(0);
        for (int axis = 0; axis < 3; ++axis) m += pauli(axis + 1) * (k * signs[i][axis]);
        out.push_back({i + 1, m * 0.25});
    }
    return out;
}

std::vector<LocalEffect> make_qutrit_nine() {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const double h = 1.0 / std::numbers::sqrt2;
    // Each triple mixes two basis states (first, second) with phases
    // (1, 1), (w, w*), (w*, w).
    const std::size_t triples[3][2] = {{0, 2}, {1, 0}, {2, 1}};
    const cplx phases[3][2] = {{1.0, 1.0}, {w, std::conj(w)}, {std::conj(w), w}};
    std::vector<LocalEffect> out;
    int index = 1;
    for (const auto &pair : triples) {
        for (const auto &ph : phases) {
            std::vector<cplx> ket(3, 0.0);
            ket[pair[0]] = h * ph[0];
            ket[pair[1]] = h * ph[1];
            out.push_back({index++, CMat::projector(ket)});
        }
    }
    return out;
}

CMat make_singlet() {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<cplx> psi = {0.0, h, -h, 0.0};
    return CMat::projector(psi);
}

// Contracts positions 1 and 4 of rho_T against x and y, leaving the 4x4
// operator M on the Bell pair with Tr[rho_T (x (x) O (x) y)] = Tr[M O].
CMat contract_locals(const CMat &rho_t, std::size_t d, const CMat &x, const CMat &y) {
    // Index of (l1, b, l4) with b in 0..3 the Bell-pair index.
    auto idx = [d](std::size_t l1, std::size_t b, std::size_t l4) { return (l1 * 4 + b) * d + l4; };
    CMat m(4, 4);
    for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t bp = 0; bp < 4; ++bp) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t ip = 0; ip < d; ++ip) {
                    const cplx xv = x(ip, i);
                    if (xv == cplx{}) continue;
                    for (std::size_t k = 0; k < d; ++k)
                        for (std::size_t kp = 0; kp < d; ++kp) {
                            const cplx yv = y(kp, k);
                            if (yv == cplx{}) continue;
                            acc += rho_t(idx(i, b, k), idx(ip, bp, kp)) * xv * yv;
                        }
                }
            // Tr[M O] = sum_{b, b'} M(b, b') O(b', b).
            m(b, bp) = acc;
        }
    return m;
}

// push_back loop; vector::insert with an initializer list trips a bogus
// -Warray-bounds in GCC 11.
void extend(std::vector<EffectPair> &p, std::initializer_list<EffectPair> more) {
    for (const auto &e : more) p.push_back(e);
}

std::vector<MeasurementPreset> make_two_qubit_presets() {
    std::vector<MeasurementPreset> out;
    const auto k = SystemKind::TwoQubit;
    std::vector<EffectPair> p = {{1, 1}};
    out.push_back({k, "B1", p});
    extend(p, {{2, 2}, {3, 3}});
    out.push_back({k, "B3", p});
    extend(p, {{4, 4}, {1, 3}});
    out.push_back({k, "B5", p});
    extend(p, {{1, 4}, {2, 4}});
    out.push_back({k, "B7", p});
    extend(p, {{1, 2}, {2, 3}, {3, 4}});
    out.push_back({k, "B10", p});
    return out;
}

std::vector<MeasurementPreset> make_qubit_qutrit_presets() {
    std::vector<MeasurementPreset> out;
    const auto k = SystemKind::QubitQutrit;
    std::vector<EffectPair> p = {{1, 1}};
    out.push_back({k, "B1", p});
    extend(p, {{3, 3}, {5, 5}, {8, 8}, {9, 9}});
    out.push_back({k, "B5", p});
    extend(p, {{2, 2}, {4, 4}, {6, 6}, {7, 7}});
    out.push_back({k, "B9", p});
    extend(p, {{1, 2}, {3, 4}, {4, 5}, {8, 9}});
    out.push_back({k, "B13", p});
    std::vector<EffectPair> all;
    for (int i = 1; i <= 9; ++i)
        for (int j = i; j <= 9; ++j) all.emplace_back(i, j);
    out.push_back({k, "B45", all});
    return out;
}

}  // namespace

const std::vector<LocalEffect> &qubit_tetrahedron() {
    static const std::vector<LocalEffect> effects = make_tetrahedron();
    return effects;
}

const std::vector<LocalEffect> &qutrit_nine() {
    static const std::vector<LocalEffect> effects = make_qutrit_nine();
    return effects;
}

const std::vector<LocalEffect> &local_effects(SystemKind kind) {
    return kind == SystemKind::TwoQubit ? qubit_tetrahedron() : qutrit_nine();
}

const CMat &bell_singlet() {
    static const CMat singlet = make_singlet();
    return singlet;
}

double p_xy(const CollectiveState &rho_t, const LocalEffect &x, const LocalEffect &y) {
    const std::size_t d = rho_t.local_dim();
    if (x.mat.rows() != d || y.mat.rows() != d || !x.mat.square() || !y.mat.square())
        throw Error(ErrorCode::DimensionMismatch, "p_xy: local effect dimension does not match the state");
    const CMat m = contract_locals(rho_t.mat(), d, x.mat, y.mat);
    const double denominator = m.trace().real();
    if (denominator < kDegenerateDenominator)
        throw Error(ErrorCode::DegenerateConditioning, "p_xy: local outcome probability below 1e-12");
    const double numerator = trace_of_product(m, bell_singlet()).real();
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

void validate_preset(const MeasurementPreset &preset) {
    const int n_effects = static_cast<int>(local_effects(preset.kind).size());
    const std::size_t max_pairs = static_cast<std::size_t>(n_effects * (n_effects + 1) / 2);
    if (preset.pairs.empty()) throw Error(ErrorCode::InvalidPreset, "preset '" + preset.name + "' has no pairs");
    if (preset.pairs.size() > max_pairs)
        throw Error(ErrorCode::InvalidPreset, "preset '" + preset.name + "' exceeds " + std::to_string(max_pairs) +
                                                  " independent pairs");
    std::set<EffectPair> seen;
    for (auto [x, y] : preset.pairs) {
        if (x < 1 || y < 1 || x > n_effects || y > n_effects)
            throw Error(ErrorCode::InvalidPreset, "preset '" + preset.name + "' has an index outside 1.." +
                                                      std::to_string(n_effects));
        if (!seen.insert({std::min(x, y), std::max(x, y)}).second)
            throw Error(ErrorCode::InvalidPreset, "preset '" + preset.name + "' repeats pair (" + std::to_string(x) +
                                                      "," + std::to_string(y) + ")");
    }
}

const std::vector<MeasurementPreset> &builtin_presets(SystemKind kind) {
    static const std::vector<MeasurementPreset> two_qubit = make_two_qubit_presets();
    static const std::vector<MeasurementPreset> qubit_qutrit = make_qubit_qutrit_presets();
    return kind == SystemKind::TwoQubit ? two_qubit : qubit_qutrit;
}

const MeasurementPreset &find_preset(SystemKind kind, std::string_view name) {
    for (const auto &p : builtin_presets(kind))
        if (p.name == name) return p;
    throw Error(ErrorCode::UnknownPreset,
                "unknown preset '" + std::string(name) + "' for " + std::string(kind_name(kind)));
}

const MeasurementPreset &complete_preset(SystemKind kind) { return builtin_presets(kind).back(); }

FeatureVector features(const DensityMatrix &rho, const MeasurementPreset &preset) {
    if (preset.kind != rho.kind())
        throw Error(ErrorCode::DimensionMismatch, "features: preset '" + preset.name + "' is for " +
                                                      std::string(kind_name(preset.kind)));
    const CollectiveState rho_t = collective_state(rho);
    const auto &effects = local_effects(rho.kind());
    FeatureVector fv;
    fv.values.reserve(preset.size());
    for (auto [x, y] : preset.pairs) fv.values.push_back(p_xy(rho_t, effects.at(x - 1), effects.at(y - 1)));
    fv.negativity = negativity(rho);
    fv.entangled = fv.negativity > kEntanglementThreshold;
    return fv;
}

}  // namespace cewlab
