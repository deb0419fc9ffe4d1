#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riccati {

enum class ErrorCode {
    InvalidModel,
    NonConvex,
    PhiOutOfDomain,
    TableMonotonicityViolation,
    NonIncreasingUtility,
    NonpositiveB,
    ZeroPivot,
    MonotonicityViolation,
    NonpositiveError,
    SingularCovariance,
    InvalidConfig,
    Io,
};

/// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { Config, Numeric };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return category_of(code_); }

private:
    ErrorCode code_;
};

}  // namespace riccati
