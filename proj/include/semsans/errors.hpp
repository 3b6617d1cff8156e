#ifndef SEMSANS_ERRORS_HPP
#define SEMSANS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semsans {

enum class ErrorCode {
    NonPositiveWavelength,
    EqualFields,
    ClassicallyForbidden,
    TotalInternalReflection,
    GrazingIncidence,
    DegenerateFocusing,
    MissedAperture,
    DegenerateDistances,
    InvalidLatticeIndex,
    SingularAxis,
    EmptyDistribution,
    ParseError,
    ValidationError,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// Process exit code for the CLI: 2 parse, 3 validation, 4 physics, 5 I/O.
    int exit_code() const {
        switch (code_) {
            case ErrorCode::ParseError: return 2;
            case ErrorCode::ValidationError: return 3;
            case ErrorCode::IoError: return 5;
            default: return 4;
        }
    }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace semsans

#endif
