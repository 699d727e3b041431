#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dtcalc {

// Stable error identifiers; the CLI maps each to error.code in reports.
enum class ErrorCode {
    DivisionByZero,
    NonTransverse,
    Degenerate,
    NotIsolated,
    NotSingular,
    NotQuasiHomogeneous,
    NotQuasiUnipotent,
    NoAdmissibleLattice,
    SingularHessian,
    EliminationFailed,
    NotExact,
    NonComposableChain,
    WindowUnderflow,
    ExponentOverflow,
    SingularMatrix,
    SchemaViolation,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DivisionByZero:      return "DivisionByZero";
        case ErrorCode::NonTransverse:       return "NonTransverse";
        case ErrorCode::Degenerate:          return "Degenerate";
        case ErrorCode::NotIsolated:         return "NotIsolated";
        case ErrorCode::NotSingular:         return "NotSingular";
        case ErrorCode::NotQuasiHomogeneous: return "NotQuasiHomogeneous";
        case ErrorCode::NotQuasiUnipotent:   return "NotQuasiUnipotent";
        case ErrorCode::NoAdmissibleLattice: return "NoAdmissibleLattice";
        case ErrorCode::SingularHessian:     return "SingularHessian";
        case ErrorCode::EliminationFailed:   return "EliminationFailed";
        case ErrorCode::NotExact:            return "NotExact";
        case ErrorCode::NonComposableChain:  return "NonComposableChain";
        case ErrorCode::WindowUnderflow:     return "WindowUnderflow";
        case ErrorCode::ExponentOverflow:    return "ExponentOverflow";
        case ErrorCode::SingularMatrix:      return "SingularMatrix";
        case ErrorCode::SchemaViolation:     return "SchemaViolation";
        case ErrorCode::InvalidArgument:     return "InvalidArgument";
    }
    return "Unknown";
}

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

// Text-level failure (polynomial or scalar grammar); carries the byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace dtcalc
