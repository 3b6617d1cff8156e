#ifndef SEMSANS_TEXTURES_HPP
#define SEMSANS_TEXTURES_HPP

#include <array>
#include <vector>

#include "semsans/core.hpp"
#include "semsans/spin_op.hpp"

namespace semsans {

/// Transverse phase gradient of one focused pair.
///   kappa_P = 2 |mu| |dB| (1 + phi) / (v0 hbar)
///   kappa_T = 2 |mu| (|dB| + (B1 + B2) phi) / (v0 hbar)
struct KappaSpec {
    double kappa_x = 0.0;  // [rad/m], from the second (y-axis) pair
    double kappa_y = 0.0;  // [rad/m], from the first (x-axis) pair
    Geometry geometry = Geometry::Parallelogram;
    std::array<double, 4> B{};  // B1..B4 [T]
    double divergence = 0.0;
};

double kappa_parallelogram(double B_a, double B_b, double phi, double v0,
                           const Constants& c);
double kappa_triangular(double B_a, double B_b, double phi, double v0,
                        const Constants& c);

struct CheckerboardFields;

/// Gradients of a solved two-pair setup: the first pair (B1, B2, x axis)
/// imparts kappa_y, the second (B3, B4, y axis) kappa_x.
KappaSpec kappa_from_fields(const CheckerboardFields& fields, Geometry geometry,
                            double phi, double v0, const Constants& c);

/// Canonical texture length r0 = v0 hbar / (2 |mu| dB).
double texture_length_r0(double v0, double dB, const Constants& c);

/// Checkerboard focusing solution for two pairs sharing |dB|:
///   B2 = B1 L1/L2, B3 = B1 L4 (L1-L2) / (L2 (L3-L4)),
///   B4 = B1 L3 (L1-L2) / (L2 (L3-L4)).
/// Requires L1 > L2 > L3 > L4 > 0; throws DegenerateDistances.
struct CheckerboardFields {
    double B1 = 0.0, B2 = 0.0, B3 = 0.0, B4 = 0.0;  // [T]
};
CheckerboardFields solve_checkerboard_fields(double B1, double L1, double L2,
                                             double L3, double L4);
/// Same, but choosing B1 so the largest field (B2) equals field_cap.
CheckerboardFields solve_checkerboard_capped(double field_cap, double L1, double L2,
                                             double L3, double L4);

/// Two-pair spin operator at transverse point (x, y):
///   U_pair = U_y(-kappa_x x) U_x(kappa_y y), written out as the 2x2 matrix.
SpinOperator u_pair(double kappa_x, double kappa_y, double x, double y);

enum class EvalMode { Serial, Parallel };

/// Sampled map over the detector plane. Channels are filled by the op that
/// produced the grid; absent channels are empty. The phase channel carries the
/// local precession angle of the two-pair operator.
struct FieldGrid {
    int nx = 0, ny = 0;
    std::vector<double> x, y;                    // sample coordinates [m]
    std::vector<std::array<double, 3>> bloch;    // <sigma> per point
    std::vector<std::array<double, 3>> oam;      // <L> per point [hbar]
    std::vector<double> phase;                   // relative phase [rad]

    int index(int ix, int iy) const { return iy * nx + ix; }
};

struct GridSpec {
    int nx = 256, ny = 256;
    double x_min = 0.0, x_max = 0.0;  // defaults to one unit cell when 0
    double y_min = 0.0, y_max = 0.0;
    int cells = 1;  // number of unit cells per axis when auto-sized
};

/// Bloch-vector texture of U_pair acting on the Bloch state (theta_in, phi_in),
/// closed forms. kappa_x = kappa_y = kappa.
FieldGrid spin_texture(double kappa, double theta_in, double phi_in,
                       const GridSpec& grid, EvalMode mode = EvalMode::Parallel);

/// OAM density components (units of hbar per |psi|^2 = 1) including the plane
/// -wave carrier terms k0z*y and -k0z*x unless subtract_carrier.
FieldGrid oam_density(double kappa, double k0z, double theta_in, double phi_in,
                      double phi_div, const GridSpec& grid,
                      bool subtract_carrier = false, EvalMode mode = EvalMode::Parallel);

/// Kernel-only variants writing into a grid with coordinates already set
/// (benchmarking and reuse).
void fill_spin_texture(FieldGrid& g, double kappa, double theta_in, double phi_in,
                       EvalMode mode);
void fill_oam_density(FieldGrid& g, double kappa, double k0z, double theta_in,
                      double phi_in, double phi_div, bool subtract_carrier,
                      EvalMode mode);

/// Closed-form Bloch vector / OAM density at a single point (used by the grid
/// kernels and by tests).
std::array<double, 3> spin_texture_point(double kappa, double theta_in, double phi_in,
                                         double x, double y);
std::array<double, 3> oam_density_point(double kappa, double k0z, double theta_in,
                                        double phi_in, double phi_div, double x,
                                        double y, bool subtract_carrier);

// -- lattice-point expansions -------------------------------------------------

enum class LatticeFamily {
    Integer,       // m, n both integers:      1 + kr (l+ s- - l- s+)
    HalfOdd,       // both half-odd:           s_z + kr (l+ s+ + l- s-)
    MixedHalfInt,  // m half-odd, n integer:   i s_y + kr/2 [(l+ + l-) + (l+ - l-) s_z]
    MixedIntHalf,  // m integer, n half-odd:   s_x + kr/2 [(l+ - l-) - (l+ + l-) s_z]
};

/// First-order expansion of u_pair around lattice point (m pi/kappa, n pi/kappa).
/// u_pair ~= global * (zeroth + kappa r * sum_j coeff_j * l_{±} X_j), with the
/// ladder term evaluated by first_order(azimuth).
struct LatticeExpansion {
    LatticeFamily family = LatticeFamily::Integer;
    cplx global{1.0, 0.0};
    SpinOperator zeroth;
    // coefficients of l+sigma+, l+sigma-, l-sigma+, l-sigma-, l+1, l-1,
    // l+sigma_z, l-sigma_z  (l± = e^{±i azimuth})
    std::array<cplx, 8> ladder{};

    SpinOperator first_order(double azimuth) const;  // the O(kappa r) matrix
    SpinOperator evaluate(double kappa, double r, double azimuth) const;
};

/// m_idx, n_idx must each be integer or half-odd integer (InvalidLatticeIndex).
LatticeExpansion oam_lattice_expansion(double kappa, double m_idx, double n_idx);

// -- momentum representation ---------------------------------------------------

struct MomentumKick {
    double dkx = 0.0, dky = 0.0;  // [rad/m]
    Spinor amplitude{};
};

/// Four transverse kicks (±kappa_x, ±kappa_y) with outgoing spin amplitudes;
/// total probability 1 for a normalized input.
std::vector<MomentumKick> momentum_kicks(double kappa_x, double kappa_y,
                                         const Spinor& psi_in);

// -- azimuthal probability current ---------------------------------------------

struct PolarGrid {
    std::vector<double> r;    // radii [m], all > 0
    std::vector<double> phi;  // azimuths [rad], uniform, periodic
    std::vector<cplx> f;      // f[i_r * phi.size() + i_phi]
};

/// J_phi = (hbar / m r) [ Im(f* d_phi f) + l |f|^2 ] via central differences
/// in the azimuth. Throws SingularAxis if any r <= 0.
std::vector<double> azimuthal_current(const PolarGrid& grid, int ell, const Constants& c);

}  // namespace semsans

#endif
