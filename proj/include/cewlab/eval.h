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

#ifndef CEWLAB_EVAL_H
#define CEWLAB_EVAL_H

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cewlab/dataset.h"
#include "cewlab/states.h"

namespace cewlab {

struct RocPoint {
    double fpr;
    double tpr;
    /// Scores >= threshold are classified entangled; +inf for the origin.
    double threshold;
};

struct RocCurve {
    std::vector<RocPoint> points;  // fpr and tpr non-decreasing, (0,0) to (1,1)
    double auc = 0.0;
};

/// Sweeps the threshold over +inf and every distinct score (descending).
/// AUC is the trapezoidal area over the achieved operating points, which
/// counts tied positive/negative pairs as one half.
/// Throws EmptyDataset for fewer than two scores or mismatched lengths and
/// DegenerateLabels if one class is absent.
RocCurve roc_curve(std::span<const double> scores, const std::vector<bool> &labels);

/// Largest TPR among points with fpr <= fpr_cap; no interpolation.
double tpr_at_fpr(const RocCurve &curve, double fpr_cap);

void write_roc(const RocCurve &curve, std::ostream &out);
void write_roc(const RocCurve &curve, const std::filesystem::path &path);
/// Minimal standalone SVG with the curve and the chance diagonal.
void write_roc_svg(const RocCurve &curve, const std::filesystem::path &path, std::string_view title);

struct ChshResult {
    bool violated;
    /// Sum of the two largest eigenvalues of T^T T; the maximal CHSH value
    /// is 2 sqrt(m_value).
    double m_value;
};

/// Horodecki criterion from the Pauli correlation matrix
/// T_ij = Tr[rho sigma_i (x) sigma_j]. Two-qubit only (DimensionMismatch).
ChshResult chsh_violation(const DensityMatrix &rho);

/// Fully entangled fraction: largest eigenvalue of Re<m_i|rho|m_j> in the
/// magic basis. Two-qubit only (DimensionMismatch).
double fef(const DensityMatrix &rho);

enum class Witness { NegativityOracle, Chsh, Fef };

std::string_view witness_name(Witness w);
/// "negativity", "chsh", "fef"; throws InvalidArgument.
Witness parse_witness(std::string_view name);
bool witness_applicable(Witness w, SystemKind kind);

/// True if the witness certifies entanglement of rho.
bool witness_detects(const DensityMatrix &rho, Witness w);

struct BaselineResult {
    Witness witness;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;

    double sensitivity() const { return positives ? static_cast<double>(true_positives) / positives : 0.0; }
    double fpr() const { return negatives ? static_cast<double>(false_positives) / negatives : 0.0; }
};

/// Regenerates the states behind the dataset's records and applies the
/// witness, with the records' labels as ground truth.
/// Throws DimensionMismatch (witness not defined for the kind),
/// EmptyDataset, or InvalidArgument if the dataset lacks draw indices.
BaselineResult baseline_sensitivity(const Dataset &d, Witness w);

}  // namespace cewlab

#endif  // CEWLAB_EVAL_H
