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

#ifndef CEWLAB_ERROR_H
#define CEWLAB_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace cewlab {

enum class ErrorCode {
    NotHermitian,
    EigenNoConvergence,
    DegenerateConditioning,
    UnknownPreset,
    InvalidPreset,
    EmptyDataset,
    DegenerateLabels,
    FormatError,
    DimensionMismatch,
    DivergedTraining,
    InvalidArgument,
    IoError,
};

std::string_view error_code_name(ErrorCode code);

/// Library-wide exception. Every failure mode that a caller may want to
/// distinguish carries its own ErrorCode.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace cewlab

#endif  // CEWLAB_ERROR_H
