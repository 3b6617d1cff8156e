#ifndef SEMSANS_CORE_HPP
#define SEMSANS_CORE_HPP

#include <array>
#include <vector>

#include "semsans/constants.hpp"
#include "semsans/errors.hpp"

namespace semsans {

enum class Geometry { Parallelogram, Triangular };
enum class Spin { Up, Down };
enum class DetectorOrientation { Vertical, FocusingPlane };

inline double spin_sign(Spin s) { return s == Spin::Up ? 1.0 : -1.0; }

/// mu_sigma per spin: mu_up = -|mu| (= mu itself), mu_down = +|mu|.
inline double mu_sigma(Spin s, const Constants& c) {
    return s == Spin::Up ? c.mu : -c.mu;
}

/// Incident neutron. Wavelength and speed are stored together and kept
/// consistent (v0 * lambda = h / m). theta_in/phi_in are the Bloch angles of
/// the incident spinor, y0/x0 the transverse coordinates at the entry face of
/// the first prism, divergence the in-plane angle w.r.t. the beam axis.
struct NeutronState {
    double wavelength = 0.0;  // [m]
    double v0 = 0.0;          // [m/s]
    double theta_in = 0.0;    // [rad], in [0, pi]
    double phi_in = 0.0;      // [rad]
    double x0 = 0.0;          // [m]
    double y0 = 0.0;          // [m]
    double divergence = 0.0;  // [rad]

    static NeutronState from_wavelength(double lambda, const Constants& c);
    static NeutronState from_speed(double v0, const Constants& c);

    void validate() const;
};

/// One pair of magnetic Wollaston prisms.
/// a: prism edge length; gap: free distance between the two prisms; B1/B2
/// field magnitudes; field_axis a transverse unit vector; L1/L2 distances
/// from the prism centers to the focus/detector.
struct PrismPairSpec {
    double a = 0.0;         // [m]
    double gap = 0.0;       // [m]
    double B1 = 0.0;        // [T], >= 0
    double B2 = 0.0;        // [T], >= 0
    std::array<double, 3> field_axis{1.0, 0.0, 0.0};
    Geometry geometry = Geometry::Parallelogram;
    double L1 = 0.0;        // [m]
    double L2 = 0.0;        // [m]
    double z_center1 = 0.0; // [m] beamline position of the first prism center

    double prism_spacing() const { return a + gap; }  // center-to-center
    void validate() const;
};

struct BeamlineConfig {
    std::vector<PrismPairSpec> pairs;
    double detector_z = 0.0;  // [m], from the center of the first prism
    DetectorOrientation detector_orientation = DetectorOrientation::Vertical;
    Constants constants = Constants::codata2018();

    void validate() const;
};

// -- core relations ----------------------------------------------------------

/// v0 = h / (m lambda). Throws NonPositiveWavelength.
double wavelength_to_speed(double lambda, const Constants& c);
double speed_to_wavelength(double v0, const Constants& c);

/// xi_SE = m |mu| lambda^2 B |L1 - L2| / (pi^2 hbar^2).
double entanglement_length_sesans(double lambda, double B, double L1, double L2,
                                  const Constants& c);

/// xi_SEM = m |mu| lambda^2 |B1 - B2| Ls / (pi^2 hbar^2).
double entanglement_length_semsans(double lambda, double B1, double B2, double Ls,
                                   const Constants& c);

/// p = pi^2 hbar^2 / (m |mu| lambda |B1 - B2|). Throws EqualFields when B1 == B2.
double fringe_period(double lambda, double B1, double B2, const Constants& c);

/// First-order deflection magnitude alpha_i = 2 |mu| B / (m v0^2).
double deflection_scale(double B, double v0, const Constants& c);

}  // namespace semsans

#endif
