#include "semsans/refraction.hpp"

#include <cmath>

namespace semsans {

namespace {
constexpr double kGrazingMargin = 1e-6;  // [rad] below pi/2
}

double speed_after(double v_in, double mu_sig, double B_signed, const Constants& c) {
    const double v2 = v_in * v_in + 2.0 * mu_sig * B_signed / c.m;
    if (!(v2 > 0.0))
        throw Error(ErrorCode::ClassicallyForbidden,
                    "Zeeman potential exceeds kinetic energy");
    return std::sqrt(v2);
}

RefractionResult refract_exact(double theta_in, double v_in, double mu_sig,
                               double dB, const Constants& c) {
    if (std::fabs(theta_in) >= M_PI / 2.0 - kGrazingMargin)
        throw Error(ErrorCode::GrazingIncidence, "incidence too close to pi/2");
    const double v_out = speed_after(v_in, mu_sig, dB, c);
    // tangential momentum conserved: v_in sin(theta_in) = v_out sin(theta_out)
    const double s_out = v_in * std::sin(theta_in) / v_out;
    if (std::fabs(s_out) > 1.0)
        throw Error(ErrorCode::TotalInternalReflection, "no transmitted ray");
    return {std::asin(s_out), v_out};
}

double deflection_first_order(double theta_in, double v_in, double mu_sig,
                              double dB, const Constants& c) {
    return -mu_sig * dB / (c.m * v_in * v_in) * std::tan(theta_in);
}

void Interface::validate() const {
    const double n2 = normal[0] * normal[0] + normal[1] * normal[1];
    if (std::fabs(n2 - 1.0) > 1e-9)
        throw Error(ErrorCode::ValidationError, "interface normal must be a unit vector");
}

RefractionResult refract_at(const Interface& iface, double theta_in, double v_in,
                            const Constants& c) {
    iface.validate();
    return refract_exact(theta_in, v_in, mu_sigma(iface.spin, c),
                         iface.discontinuity(), c);
}

namespace {

// p*c = sqrt((E-V)^2 - (m c^2)^2), factored to keep precision when E-V is
// dominated by the rest energy.
double momentum_c(double E, double V, double mass, double c_med) {
    const double rest = mass * c_med * c_med;
    const double over = E - V - rest;   // kinetic part
    const double sum = E - V + rest;
    const double p2c2 = over * sum;
    if (!(p2c2 > 0.0))
        throw Error(ErrorCode::ClassicallyForbidden,
                    "(E - V)^2 <= m^2 c^4 on one side of the boundary");
    return std::sqrt(p2c2);
}

}  // namespace

double refract_relativistic(double theta_in, double E_total, double V_in,
                            double V_out, double mass, double c_in, double c_out) {
    const double p_in = momentum_c(E_total, V_in, mass, c_in) / c_in;
    const double p_out = momentum_c(E_total, V_out, mass, c_out) / c_out;
    const double s_out = p_in * std::sin(theta_in) / p_out;
    if (std::fabs(s_out) > 1.0)
        throw Error(ErrorCode::TotalInternalReflection, "no transmitted ray");
    return std::asin(s_out);
}

}  // namespace semsans
