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

#include "cewlab/error.h"

namespace cewlab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::EigenNoConvergence: return "EigenNoConvergence";
        case ErrorCode::DegenerateConditioning: return "DegenerateConditioning";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::InvalidPreset: return "InvalidPreset";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::DegenerateLabels: return "DegenerateLabels";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DivergedTraining: return "DivergedTraining";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace cewlab
