#pragma once

#include <stdexcept>
#include <string>

namespace gravitas {

enum class ErrorCode {
    // domain
    MissingYear,
    InvalidWorldGDP,
    EmptyPanel,
    // io
    SchemaError,
    IoError,
    NegativeShare,
    // tradability
    DivisionByZeroShare,
    EmptyTable,
    SectorMismatch,
    // gravity
    LogDomainError,
    DegenerateRegressor,
    // econometrics
    SingularDesign,
    CollinearWithinGroups,
    TooFewGroups,
    IncompatibleResults,
    InconsistentInputs,
    SingularCovariance,
    InvalidDistribution,
    // config / argument validation
    InvalidConfig,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Library-wide exception type carrying a typed code plus a human message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace gravitas
