#ifndef SEMSANS_CONSTANTS_HPP
#define SEMSANS_CONSTANTS_HPP

namespace semsans {

/// Physical constants used throughout. All SI. The neutron moment mu = g_half * mu_N
/// is negative. Instances are immutable value types; tests may build scaled
/// (non-SI) sets to probe asymptotic behaviour, so validation lives in
/// validate(), not in construction.
struct Constants {
    double m;       // neutron mass [kg]
    double mu_N;    // nuclear magneton [J/T]
    double g_half;  // half the neutron g-factor, dimensionless, negative
    double mu;      // neutron magnetic moment g_half*mu_N [J/T], negative
    double hbar;    // [J s]
    double h;       // [J s]
    double c_light; // [m/s]

    double abs_mu() const { return mu < 0 ? -mu : mu; }

    /// CODATA 2018 values.
    static Constants codata2018();
    /// Same but with the rounded g_half = -1.913 often quoted in print.
    static Constants rounded_moment();
    /// Dimensionless set (m = hbar = 1, |mu| = mu_scale) for scaling studies.
    static Constants scaled(double mu_scale);

    /// Checks mu < 0, |g_half| in [1.91, 1.92], h = 2*pi*hbar to 1e-12 relative.
    /// Throws Error(ValidationError) on failure. Intended for SI configs.
    void validate() const;
};

}  // namespace semsans

#endif
