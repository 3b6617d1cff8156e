#ifndef SEMSANS_INTERFEROMETRY_HPP
#define SEMSANS_INTERFEROMETRY_HPP

#include <vector>

#include "semsans/core.hpp"
#include "semsans/spin_op.hpp"

namespace semsans {

enum class PhaseOrder { First, Second };

/// Relative-phase result. phase is the operator half-angle (the observable
/// polarization precession is 2*phase); larmor/kinetic/global always sum to
/// phase exactly. For the truncated closed forms the kinetic and global parts
/// vanish identically at first order.
struct PhaseResult {
    double phase = 0.0;    // [rad]
    double larmor = 0.0;   // [rad]
    double kinetic = 0.0;  // [rad]
    double global = 0.0;   // [rad]
    PhaseOrder order = PhaseOrder::First;
};

/// Phase spatial variation at the focusing plane, in terms of the focused
/// position y_f. Identical for both geometries:
///   phase = 2 |mu| (B1 - B2) y_f / (v0 hbar).
PhaseResult phase_on_focus(const PrismPairSpec& spec, Geometry geometry, double y_f,
                           double phi, const NeutronState& state, const Constants& c);

/// Phase spatial variation at an arbitrary detector point (y, z):
///   P: 2|mu|[(B1-B2)(1+phi) y - (B1 L1 - B2 L2) phi] / (v0 hbar)
///   T: 2|mu|[(B1-B2) y + (B1+B2) y phi - (B1 L1 - B2 L2) phi] / (v0 hbar)
/// with B1 L1 - B2 L2 = z (B1 - B2) + (a + gap) B2.
PhaseResult phase_off_focus(const PrismPairSpec& spec, Geometry geometry, double y,
                            double z, double phi, const NeutronState& state,
                            const Constants& c);

/// Observable first-order precession Phi_L^(1) = 2 * phase_off_focus(...).phase.
double phase_first_order(const PrismPairSpec& spec, Geometry geometry, double y,
                         double z, double phi, const NeutronState& state,
                         const Constants& c);

/// Second-order refractive correction to the observable precession, in the
/// six-coefficient form
///   Phi_L^(2) = |mu|/(2 v0 hbar) (A1 a1^2 + A12 a1 a2 + A2 a2^2 + Aphi phi^2
///               + A1phi a1 phi + A2phi a2 phi),  a_i = 2|mu|B_i/(m v0^2).
/// The exact-trace expansion fixes the coefficient set; the alpha*phi kinetic
/// cross terms cancel identically, so A1phi = A2phi = 0.
double phase_second_order(const PrismPairSpec& spec, Geometry geometry, double y,
                          double z, double phi, const NeutronState& state,
                          const Constants& c);

struct SecondOrderCoefficients {
    double A1 = 0.0, A12 = 0.0, A2 = 0.0, Aphi = 0.0, A1phi = 0.0, A2phi = 0.0;
};

SecondOrderCoefficients second_order_coefficients(const PrismPairSpec& spec,
                                                  Geometry geometry, double y,
                                                  double z, const NeutronState& state,
                                                  const Constants& c);

/// Larmor/kinetic split of Phi_L^(2) (the phi^2 terms are purely magnetic, the
/// alpha^3 terms split 3:-2 between the magnetic and kinetic phases).
struct SecondOrderSplit {
    double larmor = 0.0;
    double kinetic = 0.0;
};
SecondOrderSplit phase_second_order_split(const PrismPairSpec& spec, Geometry geometry,
                                          double y, double z, double phi,
                                          const NeutronState& state, const Constants& c);

/// U = cos(phase) 1 + i sin(phase) sigma_n for the pair's field axis; the
/// global phase is tracked by the oracle route (TraceResult), not here.
SpinOperator pair_unitary(const PrismPairSpec& spec, Geometry geometry, double y,
                          double z, double phi, const NeutronState& state,
                          const Constants& c);
/// Focus-plane variant (uses phase_on_focus).
SpinOperator pair_unitary_on_focus(const PrismPairSpec& spec, Geometry geometry,
                                   double y_f, double phi, const NeutronState& state,
                                   const Constants& c);

/// Coherence-volume requirements for interference at detector point (y, z):
///   dz0 = 2 y (alpha2 - alpha1)
///   dy0 = 2 [ (y - z)(alpha1 - alpha2) - (a+gap) alpha2 ]            (P)
///         2 [ (alpha1 + alpha2) y - (alpha1 - alpha2) z - (a+gap) alpha2 ] (T)
struct CoherenceRequirements {
    double dz0 = 0.0;  // [m]
    double dy0 = 0.0;  // [m]
};
CoherenceRequirements coherence_requirements(const PrismPairSpec& spec, Geometry geometry,
                                             double y, double z, double phi,
                                             const NeutronState& state, const Constants& c);

struct PhiSample {
    double phi = 0.0;
    double weight = 0.0;
};

struct FringeProfile {
    std::vector<double> y;          // [m]
    std::vector<double> intensity;  // in [0, 1]
    double visibility = 0.0;
};

/// Intensity I(y) = sum_w (1 + cos Phi_L(y, phi)) / 2 for an analyzer along the
/// pair axis, over one fringe period; visibility = (Imax-Imin)/(Imax+Imin).
/// Divergence enters through the y-independent defocus term
/// -4|mu|(B1 L1 - B2 L2) phi/(v0 hbar); the O(y*phi) period dilation is beyond
/// the model order and would mask exact phase focusing, so it is not included.
FringeProfile fringe_visibility(const PrismPairSpec& spec, Geometry geometry, double z,
                                const std::vector<PhiSample>& divergence,
                                const NeutronState& state, const Constants& c,
                                int samples_per_period = 512);

}  // namespace semsans

#endif
