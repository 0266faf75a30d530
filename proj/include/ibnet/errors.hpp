#pragma once

#include <stdexcept>
#include <string>

namespace ibnet {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched or invalid dimensions / domains of inputs.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Violated support condition (zero diagonal, empty row/column, bad pattern).
struct SupportError : Error {
    explicit SupportError(const std::string& msg) : Error(msg) {}
};

// Positive mass placed on a zero-prior cell: KL divergence is infinite.
struct InfiniteDivergenceError : Error {
    explicit InfiniteDivergenceError(const std::string& msg) : Error(msg) {}
};

// Input expected to be normalized (sum to 1) is not.
struct NormalizationError : Error {
    explicit NormalizationError(const std::string& msg) : Error(msg) {}
};

// Logistic fit cannot identify parameters from the given series.
struct FitDegenerateError : Error {
    explicit FitDegenerateError(const std::string& msg) : Error(msg) {}
};

// File/serialization problems.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace ibnet
