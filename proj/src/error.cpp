#include "krs/error.hpp"

namespace krs {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::NotHomogeneous: return "NotHomogeneous";
        case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
        case ErrorCode::NotTangent: return "NotTangent";
        case ErrorCode::ScaleExceeded: return "ScaleExceeded";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ZeroScale: return "ZeroScale";
        case ErrorCode::SigmaZero: return "SigmaZero";
        case ErrorCode::NotConverged: return "NotConverged";
    }
    return "Unknown";
}

}  // namespace krs
