#include "riccati/errors.hpp"

namespace riccati {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::NonConvex: return "NonConvex";
        case ErrorCode::PhiOutOfDomain: return "PhiOutOfDomain";
        case ErrorCode::TableMonotonicityViolation: return "TableMonotonicityViolation";
        case ErrorCode::NonIncreasingUtility: return "NonIncreasingUtility";
        case ErrorCode::NonpositiveB: return "NonpositiveB";
        case ErrorCode::ZeroPivot: return "ZeroPivot";
        case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
        case ErrorCode::NonpositiveError: return "NonpositiveError";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::Io:
        case ErrorCode::InvalidModel:
        case ErrorCode::SingularCovariance:
            return ErrorCategory::Config;
        default:
            return ErrorCategory::Numeric;
    }
}

}  // namespace riccati
