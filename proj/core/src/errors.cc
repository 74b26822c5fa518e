// Copyright 2026 The RABG Authors
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

#include "rabg/errors.h"

namespace rabg {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NoConvergence:
            return "NoConvergence";
        case ErrorCode::NotFinite:
            return "NotFinite";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::BadSubsystem:
            return "BadSubsystem";
        case ErrorCode::LayoutMismatch:
            return "LayoutMismatch";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::NotTracePreserving:
            return "NotTracePreserving";
        case ErrorCode::BadWeights:
            return "BadWeights";
        case ErrorCode::BadRound:
            return "BadRound";
        case ErrorCode::BadThreshold:
            return "BadThreshold";
        case ErrorCode::NotUnitVector:
            return "NotUnitVector";
        case ErrorCode::OracleMismatch:
            return "OracleMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace rabg
