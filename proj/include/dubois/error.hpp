// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dubois {

enum class ErrorCode {
    InvalidDataset,
    InvalidThreshold,
    InvalidConfig,
    LayoutOverflow,
    EmptyInput,
    AmbiguousTruth,
    DivisionByZero,
    TaskMismatch,
    ZeroVariance,
    LengthMismatch,
    UnknownDataset,
    Parse,
    Io,
};

/// Stable snake_case name, used in JSON error bodies and CLI messages.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dubois
