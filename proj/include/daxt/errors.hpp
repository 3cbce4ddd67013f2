#pragma once

#include <stdexcept>
#include <string>

namespace daxt {

// Violated precondition, malformed input, dimension mismatch. CLI exit code 1.
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failure: missing file, unreadable, unwritable. CLI exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite loss or parameter during training; names the epoch/batch.
struct TrainingFault : std::runtime_error {
    explicit TrainingFault(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace daxt
