// Copyright 2026 The qsensor Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qsensor {

enum class ErrorCode {
    DimensionMismatch,
    InvalidArgument,
    NotHermitian,
    NotClosed,
    Unbound,
    Singular,
    NotMinimal,
    Budget,
    SizeCap,
    Parse,
    Inadmissible,
    Unidentifiable,
    Numeric,
};

const char *error_code_name(ErrorCode code);

/// Every failure in the library is reported by throwing this.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }
    ErrorCode code() const {
        return code_;
    }

   private:
    ErrorCode code_;
};

inline const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "dimension mismatch";
        case ErrorCode::InvalidArgument:
            return "invalid argument";
        case ErrorCode::NotHermitian:
            return "not hermitian";
        case ErrorCode::NotClosed:
            return "set not closed";
        case ErrorCode::Unbound:
            return "unbound parameter";
        case ErrorCode::Singular:
            return "singular";
        case ErrorCode::NotMinimal:
            return "model not minimal";
        case ErrorCode::Budget:
            return "budget exceeded";
        case ErrorCode::SizeCap:
            return "size cap exceeded";
        case ErrorCode::Parse:
            return "parse error";
        case ErrorCode::Inadmissible:
            return "inadmissible";
        case ErrorCode::Unidentifiable:
            return "unidentifiable";
        case ErrorCode::Numeric:
            return "numeric failure";
    }
    return "error";
}

}  // namespace qsensor
