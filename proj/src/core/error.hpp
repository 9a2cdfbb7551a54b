/*
 * Copyright 2026 The vortexcont Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace vortexcont {

/// Outcome classes shared by the core, the C API and the CLI exit codes.
enum class ErrorCode {
    InvalidArgument = 1,
    Config = 2,
    NonConvergence = 3,
    Monitor = 4,
    Internal = 5,
    Io = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a parameter set violates a hypothesis that gates solving.
/// The flag name is kept so reports can point at the offending inequality.
class AdmissibilityError : public Error {
public:
    AdmissibilityError(std::string flag, const std::string& what)
        : Error(ErrorCode::Config, what), flag_(std::move(flag)) {}
    const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

/// The cleared denominator of the residual left the positive regime.
class DenominatorError : public Error {
public:
    DenominatorError(double min_value, const std::string& what)
        : Error(ErrorCode::NonConvergence, what), min_value_(min_value) {}
    double min_value() const noexcept { return min_value_; }

private:
    double min_value_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) {
        throw Error(ErrorCode::InvalidArgument, what);
    }
}

}  // namespace vortexcont
