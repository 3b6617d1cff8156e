#ifndef SEMSANS_REFRACTION_HPP
#define SEMSANS_REFRACTION_HPP

#include "semsans/core.hpp"

namespace semsans {

struct RefractionResult {
    double theta_out;  // [rad]
    double v_out;      // [m/s]
};

/// A sharp film between two uniform field regions. Fields are signed along
/// the pair axis (the sign encodes the +-axis orientation); the normal is a
/// unit 2-vector in the (y, z) plane.
struct Interface {
    std::array<double, 2> normal{0.0, 1.0};  // (y, z) components
    double B_in = 0.0;                       // [T], signed
    double B_out = 0.0;                      // [T], signed
    Spin spin = Spin::Up;

    double discontinuity() const { return B_out - B_in; }
    void validate() const;
};

/// refract_exact driven by an Interface description.
RefractionResult refract_at(const Interface& iface, double theta_in, double v_in,
                            const Constants& c);

/// Speed after entering a region whose signed field along the spin axis is
/// B_signed, starting from speed v_in in a field-free region:
///   v_out = sqrt(v_in^2 + 2 mu_sigma B_signed / m).
/// Conserves 1/2 m v^2 - mu_sigma B. Throws ClassicallyForbidden.
double speed_after(double v_in, double mu_sig, double B_signed, const Constants& c);

/// Magnetic Snell's law across a sharp boundary with total (signed) field
/// discontinuity dB along the spin axis:
///   sin(theta_out) = (1 + 2 mu_sigma dB / (m v_in^2))^(-1/2) sin(theta_in),
/// with tangential velocity conserved. |theta_in| < pi/2 - 1e-6 rad, else
/// GrazingIncidence. Throws ClassicallyForbidden / TotalInternalReflection.
RefractionResult refract_exact(double theta_in, double v_in, double mu_sig,
                               double dB, const Constants& c);

/// First-order deflection alpha = -mu_sigma dB tan(theta_in) / (m v_in^2).
double deflection_first_order(double theta_in, double v_in, double mu_sig,
                              double dB, const Constants& c);

/// Snell's law from the relativistic canonical momentum
///   p = sqrt((E - V)^2 - m^2 c^4) / c   per side,
///   sin(theta_out) / sin(theta_in) = p_in / p_out.
/// E_total includes the rest energy. mass = 0 reduces to
/// c_out sin(theta_in) = c_in sin(theta_out); massive non-relativistic inputs
/// reduce to v_in sin(theta_in) = v_out sin(theta_out).
double refract_relativistic(double theta_in, double E_total, double V_in,
                            double V_out, double mass, double c_in, double c_out);

}  // namespace semsans

#endif
