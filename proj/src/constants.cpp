#include "semsans/constants.hpp"

#include <cmath>

#include "semsans/errors.hpp"

namespace semsans {

Constants Constants::codata2018() {
    Constants c;
    c.m = 1.67492749804e-27;
    c.mu_N = 5.0507837461e-27;
    c.g_half = -1.91304273;
    c.mu = c.g_half * c.mu_N;
    c.h = 6.62607015e-34;       // exact by SI definition
    c.hbar = c.h / (2.0 * M_PI);
    c.c_light = 299792458.0;
    return c;
}

Constants Constants::rounded_moment() {
    Constants c = codata2018();
    c.g_half = -1.913;
    c.mu = c.g_half * c.mu_N;
    return c;
}

Constants Constants::scaled(double mu_scale) {
    Constants c;
    c.m = 1.0;
    c.mu_N = mu_scale;
    c.g_half = -1.0;
    c.mu = -mu_scale;
    c.hbar = 1.0;
    c.h = 2.0 * M_PI;
    c.c_light = 2.99792458e8;
    return c;
}

void Constants::validate() const {
    if (!(mu < 0.0))
        throw Error(ErrorCode::ValidationError, "neutron moment must be negative");
    const double g = std::fabs(g_half);
    if (!(g >= 1.91 && g <= 1.92))
        throw Error(ErrorCode::ValidationError, "|g_half| outside [1.91, 1.92]");
    if (std::fabs(h - 2.0 * M_PI * hbar) > 1e-12 * h)
        throw Error(ErrorCode::ValidationError, "h != 2*pi*hbar");
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveWavelength: return "NonPositiveWavelength";
        case ErrorCode::EqualFields: return "EqualFields";
        case ErrorCode::ClassicallyForbidden: return "ClassicallyForbidden";
        case ErrorCode::TotalInternalReflection: return "TotalInternalReflection";
        case ErrorCode::GrazingIncidence: return "GrazingIncidence";
        case ErrorCode::DegenerateFocusing: return "DegenerateFocusing";
        case ErrorCode::MissedAperture: return "MissedAperture";
        case ErrorCode::DegenerateDistances: return "DegenerateDistances";
        case ErrorCode::InvalidLatticeIndex: return "InvalidLatticeIndex";
        case ErrorCode::SingularAxis: return "SingularAxis";
        case ErrorCode::EmptyDistribution: return "EmptyDistribution";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace semsans
