#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgq {

enum class ErrorCode {
    InvalidArgument,
    Parity,          // n(l - g + 1) odd: no finite maximal count
    NonInteger,      // an invariant failed its integrality check
    NonHomogeneous,  // polynomial terms of different weighted degree
    Nonvanishing,    // S_rho(zeta^J) = 0 where a negative power is needed
    ZeroDivisor,     // inversion of zero
    SingularEuler,   // quantum Euler operator not invertible at genus 0
    Parse,
    Cache,
    BackendMismatch, // exact and float results disagree
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Parity: return "PARITY";
    case ErrorCode::NonInteger: return "NONINTEGER";
    case ErrorCode::NonHomogeneous: return "NONHOMOGENEOUS";
    case ErrorCode::Nonvanishing: return "NONVANISHING";
    case ErrorCode::ZeroDivisor: return "ZERO_DIVISOR";
    case ErrorCode::SingularEuler: return "SINGULAR_EULER";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Cache: return "CACHE";
    case ErrorCode::BackendMismatch: return "BACKEND_MISMATCH";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lgq
