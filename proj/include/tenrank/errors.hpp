// Error taxonomy shared by all tenrank components.
#ifndef TENRANK_ERRORS_HPP
#define TENRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tenrank {

enum class ErrorCode {
    NotMonic,
    Reducible,
    DegreeCapExceeded,
    FieldMismatch,
    DivisionByZero,
    OrderMismatch,
    ShapeMismatch,
    SizeCapExceeded,
    BadModeSet,
    ParseError,
    FieldError,
    IndexError,
    InvalidArgument,
    Internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotMonic: return "NotMonic";
        case ErrorCode::Reducible: return "Reducible";
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
        case ErrorCode::BadModeSet: return "BadModeSet";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::FieldError: return "FieldError";
        case ErrorCode::IndexError: return "IndexError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Internal: return "Internal";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Reducible carries the offending factor so callers can report it.
class ReducibleError : public Error {
public:
    ReducibleError(const std::string& factor)
        : Error(ErrorCode::Reducible, "minimal polynomial has factor " + factor), factor_(factor) {}

    const std::string& factor() const { return factor_; }

private:
    std::string factor_;
};

} // namespace tenrank

#endif
