#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ccomp {

enum class ErrorCode {
    incompatible_fields,
    unsupported,
    divide_by_zero,
    syntax_error,
    unknown_symbol,
    invalid_field,
    invalid_bound,
    invalid_cap,
    extension_cap_exceeded,
    unsupported_algebraic_extension,
    not_compatible,
    not_consistent,
    invalid_cycle,
    f_in_kxp,
    invalid_params,
    io_error,
};

inline const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::incompatible_fields: return "IncompatibleFields";
    case ErrorCode::unsupported: return "Unsupported";
    case ErrorCode::divide_by_zero: return "DivideByZero";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unknown_symbol: return "UnknownSymbol";
    case ErrorCode::invalid_field: return "InvalidField";
    case ErrorCode::invalid_bound: return "InvalidBound";
    case ErrorCode::invalid_cap: return "InvalidCap";
    case ErrorCode::extension_cap_exceeded: return "ExtensionCapExceeded";
    case ErrorCode::unsupported_algebraic_extension: return "UnsupportedAlgebraicExtension";
    case ErrorCode::not_compatible: return "NotCompatible";
    case ErrorCode::not_consistent: return "NotConsistent";
    case ErrorCode::invalid_cycle: return "InvalidCycle";
    case ErrorCode::f_in_kxp: return "FInKxp";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }

    Error(ErrorCode code, const std::string& what, std::size_t position)
        : std::runtime_error(std::string(error_code_name(code)) + " at position " +
                             std::to_string(position) + ": " + what),
          code_(code), position_(position)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> position_;
};

} // namespace ccomp
