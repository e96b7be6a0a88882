#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krs {

enum class ErrorCode {
    MalformedInput,
    UnknownVariable,
    NotHomogeneous,
    EmptyPolynomial,
    NotTangent,
    ScaleExceeded,
    BudgetExceeded,
    ZeroScale,
    SigmaZero,
    NotConverged,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Exception carrying one of the library's error kinds.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace krs
