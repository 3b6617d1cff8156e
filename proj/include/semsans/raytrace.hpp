#ifndef SEMSANS_RAYTRACE_HPP
#define SEMSANS_RAYTRACE_HPP

#include <vector>

#include "semsans/core.hpp"

namespace semsans {

/// Straight ray piece between two boundaries. Angles are measured from the
/// beam axis z; zeeman is the potential energy -mu_sigma*b of the region.
struct RaySegment {
    double y0 = 0.0, z0 = 0.0;  // start [m]
    double y1 = 0.0, z1 = 0.0;  // end [m]
    double angle = 0.0;         // [rad]
    double speed = 0.0;         // [m/s]
    double zeeman = 0.0;        // [J]
    double dt = 0.0;            // [s]
    int region = 0;             // 0 free, then 10*pair+1..4 inside prisms
};

struct Crossing {
    double y = 0.0, z = 0.0;
};

struct SpinPath {
    std::vector<RaySegment> segments;
    std::vector<Crossing> hyp_crossings;  // one per prism actually crossed
    double tau = 0.0;       // entry plane -> last segment end [s]
    double int_V = 0.0;     // accumulated potential*dt [J s]
    double larmor = 0.0;    // -(1/hbar) * int_V  [rad]
    double kinetic = 0.0;   // sum k.dr/2 over segments [rad]
    double angle_out = 0.0; // final direction [rad]
    double y_out = 0.0, z_out = 0.0;
};

struct TraceResult {
    SpinPath up, down;
    double y_f = 0.0, z_f = 0.0, x_f = 0.0;  // intersection of the final rays
    double t_f_up = 0.0, t_f_down = 0.0;     // entry plane -> focus [s]
    double larmor_up = 0.0, larmor_down = 0.0;    // accumulated to the focus [rad]
    double kinetic_up = 0.0, kinetic_down = 0.0;  // accumulated to the focus [rad]
};

struct FocusPoint {
    double y_f = 0.0, z_f = 0.0, x_f = 0.0;
};

struct DeflectionChain {
    double gamma0 = 0.0;  // entry-face kink of the divergence angle
    double gamma1 = 0.0;  // first hypotenuse, z-axis angle increment
    double gamma2 = 0.0;  // second hypotenuse, z-axis angle increment
};

struct DeflectionChains {
    DeflectionChain up, down;
};

// -- closed forms (first-order in deflection, keeping the alpha*phi ladder) --

DeflectionChains deflection_chain(const PrismPairSpec& spec, const NeutronState& state,
                                  const Constants& c);

/// Parallelogram focus, truncated closed form including divergence terms.
/// Throws DegenerateFocusing when B1 == B2.
FocusPoint focus_parallelogram(const PrismPairSpec& spec, const NeutronState& state,
                               const Constants& c);
FocusPoint focus_triangular(const PrismPairSpec& spec, const NeutronState& state,
                            const Constants& c);

/// First-order inversion of the focus position: entry coordinate y0 giving
/// focus at y_f for divergence phi.
double entry_from_focus(const PrismPairSpec& spec, Geometry geometry, double y_f,
                        double phi, const Constants& c);

struct ArrivalTimes {
    double t_up = 0.0, t_down = 0.0;  // [s]
    double v0 = 0.0;
    /// Initial longitudinal separation dz0 = v0 (t_up - t_down) = 2 y_f (a2 - a1).
    double dz0() const { return v0 * (t_up - t_down); }
};

ArrivalTimes arrival_times(const PrismPairSpec& spec, Geometry geometry,
                           const NeutronState& state, const Constants& c);

// -- exact oracle tracer ------------------------------------------------------

/// Exact piecewise-straight trace of one spin eigenstate through every pair in
/// the config, with exact refraction at every film. All pairs must share a
/// field axis. Throws MissedAperture when the ray leaves the prism stack
/// transversally (corner hits included).
SpinPath trace_spin(const BeamlineConfig& config, const NeutronState& state,
                    Spin spin);

/// Both spins plus focus point, arrival times and accumulated phases.
TraceResult trace_exact(const BeamlineConfig& config, const NeutronState& state,
                        const Constants& c);

/// Entry coordinate whose spin-sigma ray arrives exactly at (y, z) behind the
/// stack, for divergence phi. Secant solve on the exact tracer.
double entry_for_arrival(const BeamlineConfig& config, const NeutronState& state,
                         Spin spin, double y, double z);

/// Exact relative phase Phi_L = Phi_up - Phi_down of the two spin paths that
/// meet at detector point (y, z), equal-time construction:
///   Phi_sigma = k0 . e_sigma + k0 v0 tau_sigma - (2/hbar) int V_sigma dt.
/// Also returns the larmor/kinetic split and the global (spin-symmetric) part.
struct OraclePhase {
    double relative = 0.0;  // Phi_L [rad]
    double larmor = 0.0;    // potential-phase part of the difference [rad]
    double kinetic = 0.0;   // geometric part of the difference [rad]
    double global = 0.0;    // (Phi_up + Phi_down)/2 [rad]
    double y0_up = 0.0, y0_down = 0.0;
};

OraclePhase oracle_relative_phase(const BeamlineConfig& config, const NeutronState& state,
                                  double y, double z);

/// Helper: single-pair BeamlineConfig wrapper around a PrismPairSpec.
BeamlineConfig single_pair_config(const PrismPairSpec& spec, double detector_z,
                                  const Constants& c);

}  // namespace semsans

#endif
