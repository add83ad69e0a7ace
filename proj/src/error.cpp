// SPDX-License-Identifier: Apache-2.0
#include "dubois/error.hpp"

namespace dubois {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDataset: return "invalid_dataset";
        case ErrorCode::InvalidThreshold: return "invalid_threshold";
        case ErrorCode::InvalidConfig: return "invalid_config";
        case ErrorCode::LayoutOverflow: return "layout_overflow";
        case ErrorCode::EmptyInput: return "empty_input";
        case ErrorCode::AmbiguousTruth: return "ambiguous_truth";
        case ErrorCode::DivisionByZero: return "division_by_zero";
        case ErrorCode::TaskMismatch: return "task_mismatch";
        case ErrorCode::ZeroVariance: return "zero_variance";
        case ErrorCode::LengthMismatch: return "length_mismatch";
        case ErrorCode::UnknownDataset: return "unknown_dataset";
        case ErrorCode::Parse: return "parse_error";
        case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

}  // namespace dubois
