#include "gravitas/error.hpp"

namespace gravitas {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingYear: return "MissingYear";
        case ErrorCode::InvalidWorldGDP: return "InvalidWorldGDP";
        case ErrorCode::EmptyPanel: return "EmptyPanel";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::NegativeShare: return "NegativeShare";
        case ErrorCode::DivisionByZeroShare: return "DivisionByZeroShare";
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::SectorMismatch: return "SectorMismatch";
        case ErrorCode::LogDomainError: return "LogDomainError";
        case ErrorCode::DegenerateRegressor: return "DegenerateRegressor";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::CollinearWithinGroups: return "CollinearWithinGroups";
        case ErrorCode::TooFewGroups: return "TooFewGroups";
        case ErrorCode::IncompatibleResults: return "IncompatibleResults";
        case ErrorCode::InconsistentInputs: return "InconsistentInputs";
        case ErrorCode::SingularCovariance: return "SingularCovariance";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

}  // namespace gravitas
