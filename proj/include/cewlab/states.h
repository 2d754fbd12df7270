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

#ifndef CEWLAB_STATES_H
#define CEWLAB_STATES_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cewlab/qlinalg.h"
#include "cewlab/rng.h"

namespace cewlab {

/// Bipartite system. Subsystem 1 is always the qubit that enters the Bell
/// projection; subsystem 2 is the locally measured qubit or qutrit.
enum class SystemKind { TwoQubit, QubitQutrit };

struct SubsystemDims {
    std::size_t first;
    std::size_t second;
    std::size_t total() const noexcept { return first * second; }
};

SubsystemDims dims_of(SystemKind kind);

/// "two-qubit" / "qubit-qutrit".
std::string_view kind_name(SystemKind kind);
/// Inverse of kind_name; throws InvalidArgument.
SystemKind parse_kind(std::string_view name);

enum class Subsystem { First = 1, Second = 2 };

/// Labels with negativity above this are entangled.
inline constexpr double kEntanglementThreshold = 1e-7;

class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
    /// (minimum eigenvalue >= -1e-10). Throws InvalidArgument otherwise.
    DensityMatrix(SystemKind kind, CMat mat);

    SystemKind kind() const noexcept { return kind_; }
    const CMat &mat() const noexcept { return mat_; }
    SubsystemDims dims() const { return dims_of(kind_); }

   private:
    SystemKind kind_;
    CMat mat_;
};

/// Two-copy state on the ordering (local, Bell, Bell, local), i.e.
/// (sub2, sub1, sub1, sub2) of the original pair. Positions 2 and 3 are the
/// qubits that undergo the singlet projection.
class CollectiveState {
   public:
    CollectiveState(SystemKind kind, CMat mat);

    SystemKind kind() const noexcept { return kind_; }
    const CMat &mat() const noexcept { return mat_; }
    /// Dimension of positions 1 and 4.
    std::size_t local_dim() const { return dims_of(kind_).second; }

   private:
    SystemKind kind_;
    CMat mat_;
};

/// Eigenvalues on the probability simplex, uniform (Dirichlet(1)) measure.
std::vector<double> sample_spectrum(std::size_t dim, Rng &rng);

/// rho = U^dagger diag(spectrum) U with U Haar random. Consumes the spectrum
/// draws first and the unitary draws second from the same stream.
DensityMatrix sample_density(SystemKind kind, Rng &rng);

CMat partial_transpose(const DensityMatrix &rho, Subsystem which = Subsystem::Second);
CMat partial_transpose(const CMat &mat, SubsystemDims dims, Subsystem which);

/// Absolute sum of the negative eigenvalues of the partial transpose.
double negativity(const DensityMatrix &rho, Subsystem which = Subsystem::Second);

bool is_entangled(const DensityMatrix &rho);

/// rho_T = (S rho S^T) (x) rho, S moving subsystem 2 in front of subsystem 1.
CollectiveState collective_state(const DensityMatrix &rho);

}  // namespace cewlab

#endif  // CEWLAB_STATES_H
