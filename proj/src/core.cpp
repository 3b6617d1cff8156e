#include "semsans/core.hpp"

#include <cmath>

namespace semsans {

NeutronState NeutronState::from_wavelength(double lambda, const Constants& c) {
    NeutronState s;
    s.wavelength = lambda;
    s.v0 = wavelength_to_speed(lambda, c);
    return s;
}

NeutronState NeutronState::from_speed(double v0, const Constants& c) {
    NeutronState s;
    s.v0 = v0;
    s.wavelength = speed_to_wavelength(v0, c);
    return s;
}

void NeutronState::validate() const {
    if (!(wavelength > 0.0) || !(v0 > 0.0))
        throw Error(ErrorCode::ValidationError, "wavelength and speed must be positive");
    if (!(theta_in >= 0.0 && theta_in <= M_PI))
        throw Error(ErrorCode::ValidationError, "theta_in outside [0, pi]");
}

void PrismPairSpec::validate() const {
    if (!(a > 0.0))
        throw Error(ErrorCode::ValidationError, "prism edge length must be positive");
    if (gap < 0.0)
        throw Error(ErrorCode::ValidationError, "prism gap must be non-negative");
    if (B1 < 0.0 || B2 < 0.0)
        throw Error(ErrorCode::ValidationError, "field magnitudes must be non-negative");
    if (std::fabs(field_axis[2]) > 1e-12)
        throw Error(ErrorCode::ValidationError, "field axis must be transverse to z");
    const double n2 = field_axis[0]*field_axis[0] + field_axis[1]*field_axis[1]
                    + field_axis[2]*field_axis[2];
    if (std::fabs(n2 - 1.0) > 1e-9)
        throw Error(ErrorCode::ValidationError, "field axis must be a unit vector");
}

void BeamlineConfig::validate() const {
    if (pairs.empty())
        throw Error(ErrorCode::ValidationError, "beamline has no prism pairs");
    for (const auto& p : pairs) p.validate();
    if (pairs.size() == 2) {
        const auto& n1 = pairs[0].field_axis;
        const auto& n2 = pairs[1].field_axis;
        const double dot = n1[0]*n2[0] + n1[1]*n2[1] + n1[2]*n2[2];
        const bool orthogonal = std::fabs(dot) < 1e-9;
        const bool parallel = std::fabs(std::fabs(dot) - 1.0) < 1e-9;
        if (!orthogonal && !parallel)
            throw Error(ErrorCode::ValidationError,
                        "two-pair axes must be orthogonal or parallel");
    }
}

double wavelength_to_speed(double lambda, const Constants& c) {
    if (!(lambda > 0.0))
        throw Error(ErrorCode::NonPositiveWavelength, "wavelength must be positive");
    return c.h / (c.m * lambda);
}

double speed_to_wavelength(double v0, const Constants& c) {
    if (!(v0 > 0.0))
        throw Error(ErrorCode::ValidationError, "speed must be positive");
    return c.h / (c.m * v0);
}

double entanglement_length_sesans(double lambda, double B, double L1, double L2,
                                  const Constants& c) {
    if (!(lambda > 0.0))
        throw Error(ErrorCode::NonPositiveWavelength, "wavelength must be positive");
    const double hb2 = c.hbar * c.hbar;
    return c.m * c.abs_mu() * lambda * lambda * B * std::fabs(L1 - L2) / (M_PI * M_PI * hb2);
}

double entanglement_length_semsans(double lambda, double B1, double B2, double Ls,
                                   const Constants& c) {
    if (!(lambda > 0.0))
        throw Error(ErrorCode::NonPositiveWavelength, "wavelength must be positive");
    const double hb2 = c.hbar * c.hbar;
    return c.m * c.abs_mu() * lambda * lambda * std::fabs(B1 - B2) * Ls / (M_PI * M_PI * hb2);
}

double fringe_period(double lambda, double B1, double B2, const Constants& c) {
    if (!(lambda > 0.0))
        throw Error(ErrorCode::NonPositiveWavelength, "wavelength must be positive");
    if (B1 == B2)
        throw Error(ErrorCode::EqualFields, "fringe period diverges for equal fields");
    const double hb2 = c.hbar * c.hbar;
    return M_PI * M_PI * hb2 / (c.m * c.abs_mu() * lambda * std::fabs(B1 - B2));
}

double deflection_scale(double B, double v0, const Constants& c) {
    return 2.0 * c.abs_mu() * B / (c.m * v0 * v0);
}

}  // namespace semsans
