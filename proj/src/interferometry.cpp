#include "semsans/interferometry.hpp"

#include <algorithm>
#include <cmath>

namespace semsans {

namespace {

// B1 L1 - B2 L2 expressed through the detector position z measured from the
// center of the first prism: z (B1 - B2) + (a + gap) B2.
double field_lever(const PrismPairSpec& spec, double z) {
    return z * (spec.B1 - spec.B2) + spec.prism_spacing() * spec.B2;
}

PhaseResult make_first_order(double value) {
    PhaseResult r;
    r.phase = value;
    r.larmor = value;  // the kinetic and global parts cancel at this order
    r.kinetic = 0.0;
    r.global = 0.0;
    r.order = PhaseOrder::First;
    return r;
}

}  // namespace

PhaseResult phase_on_focus(const PrismPairSpec& spec, Geometry geometry, double y_f,
                           double phi, const NeutronState& state, const Constants& c) {
    (void)geometry;  // identical for both geometries on the focusing plane
    (void)phi;
    if (spec.B1 == spec.B2)
        throw Error(ErrorCode::DegenerateFocusing, "B1 == B2: no finite focus");
    const double value = 2.0 * c.abs_mu() * (spec.B1 - spec.B2) * y_f
                       / (state.v0 * c.hbar);
    return make_first_order(value);
}

PhaseResult phase_off_focus(const PrismPairSpec& spec, Geometry geometry, double y,
                            double z, double phi, const NeutronState& state,
                            const Constants& c) {
    const double pref = 2.0 * c.abs_mu() / (state.v0 * c.hbar);
    double value;
    if (geometry == Geometry::Parallelogram) {
        value = pref * ((spec.B1 - spec.B2) * (1.0 + phi) * y - field_lever(spec, z) * phi);
    } else {
        value = pref * ((spec.B1 - spec.B2) * y + (spec.B1 + spec.B2) * y * phi
                        - field_lever(spec, z) * phi);
    }
    return make_first_order(value);
}

double phase_first_order(const PrismPairSpec& spec, Geometry geometry, double y,
                         double z, double phi, const NeutronState& state,
                         const Constants& c) {
    return 2.0 * phase_off_focus(spec, geometry, y, z, phi, state, c).phase;
}

namespace {

struct CubicCoeffs {
    double c1, c12a, c12b, c2, k1, k2;
};

// Coefficient set of the exact-trace expansion at the detector point (y, z):
//   Phi^(2) = k0/4 (c1 a1^3 + c12a a1^2 a2 + c12b a1 a2^2 + c2 a2^3
//                   + k1 a1 phi^2 + k2 a2 phi^2).
CubicCoeffs cubic_coeffs(const PrismPairSpec& spec, Geometry geometry, double y, double z) {
    const double a = spec.a;
    const double g = spec.gap;
    const double D = spec.prism_spacing();
    CubicCoeffs q;
    if (geometry == Geometry::Parallelogram) {
        q.c1 = 7.0 * y - 4.0 * z - a;
        q.c12a = 12.0 * z - 12.0 * D - 16.0 * y;
        q.c12b = 10.0 * a + 12.0 * g + 16.0 * y - 12.0 * z;
        q.c2 = 4.0 * z - 3.0 * a - 4.0 * g - 7.0 * y;
        q.k1 = 12.0 * y - 8.0 * z;
        q.k2 = 8.0 * z - 8.0 * D - 12.0 * y;
    } else {
        q.c1 = 7.0 * y - 4.0 * z - a;
        q.c12a = 4.0 * D - 8.0 * y - 4.0 * z;
        q.c12b = 16.0 * y + 12.0 * z - 10.0 * a - 12.0 * g;
        q.c2 = 3.0 * a + 4.0 * g - 7.0 * y - 4.0 * z;
        q.k1 = 12.0 * y - 8.0 * z;
        q.k2 = 8.0 * D - 12.0 * y - 8.0 * z;
    }
    return q;
}

}  // namespace

SecondOrderCoefficients second_order_coefficients(const PrismPairSpec& spec,
                                                  Geometry geometry, double y,
                                                  double z, const NeutronState& state,
                                                  const Constants& c) {
    (void)state;
    (void)c;
    const CubicCoeffs q = cubic_coeffs(spec, geometry, y, z);
    SecondOrderCoefficients A;
    A.A1 = spec.B1 * q.c1;
    A.A12 = spec.B1 * q.c12a + spec.B2 * q.c12b;
    A.A2 = spec.B2 * q.c2;
    A.Aphi = spec.B1 * q.k1 + spec.B2 * q.k2;
    A.A1phi = 0.0;  // the alpha*phi kinetic cross terms cancel exactly
    A.A2phi = 0.0;
    return A;
}

double phase_second_order(const PrismPairSpec& spec, Geometry geometry, double y,
                          double z, double phi, const NeutronState& state,
                          const Constants& c) {
    const CubicCoeffs q = cubic_coeffs(spec, geometry, y, z);
    const double v0 = state.v0;
    const double a1 = deflection_scale(spec.B1, v0, c);
    const double a2 = deflection_scale(spec.B2, v0, c);
    const double k0 = c.m * v0 / c.hbar;
    const double cubic = q.c1 * a1 * a1 * a1 + q.c12a * a1 * a1 * a2
                       + q.c12b * a1 * a2 * a2 + q.c2 * a2 * a2 * a2;
    const double quad = (q.k1 * a1 + q.k2 * a2) * phi * phi;
    return 0.25 * k0 * (cubic + quad);
}

SecondOrderSplit phase_second_order_split(const PrismPairSpec& spec, Geometry geometry,
                                          double y, double z, double phi,
                                          const NeutronState& state, const Constants& c) {
    const CubicCoeffs q = cubic_coeffs(spec, geometry, y, z);
    const double v0 = state.v0;
    const double a1 = deflection_scale(spec.B1, v0, c);
    const double a2 = deflection_scale(spec.B2, v0, c);
    const double k0 = c.m * v0 / c.hbar;
    const double cubic = q.c1 * a1 * a1 * a1 + q.c12a * a1 * a1 * a2
                       + q.c12b * a1 * a2 * a2 + q.c2 * a2 * a2 * a2;
    const double quad = (q.k1 * a1 + q.k2 * a2) * phi * phi;
    SecondOrderSplit s;
    s.larmor = 0.25 * k0 * (3.0 * cubic + quad);  // magnetic phase, incl. all phi^2 terms
    s.kinetic = -0.5 * k0 * cubic;                // kinetic phase, pure alpha^3
    return s;
}

SpinOperator pair_unitary(const PrismPairSpec& spec, Geometry geometry, double y,
                          double z, double phi, const NeutronState& state,
                          const Constants& c) {
    const double ph = phase_off_focus(spec, geometry, y, z, phi, state, c).phase;
    const SpinOperator sn = SpinOperator::sigma_n(spec.field_axis[0], spec.field_axis[1],
                                                  spec.field_axis[2]);
    return SpinOperator::identity() * cplx(std::cos(ph), 0.0) + sn * cplx(0.0, std::sin(ph));
}

SpinOperator pair_unitary_on_focus(const PrismPairSpec& spec, Geometry geometry,
                                   double y_f, double phi, const NeutronState& state,
                                   const Constants& c) {
    const double ph = phase_on_focus(spec, geometry, y_f, phi, state, c).phase;
    const SpinOperator sn = SpinOperator::sigma_n(spec.field_axis[0], spec.field_axis[1],
                                                  spec.field_axis[2]);
    return SpinOperator::identity() * cplx(std::cos(ph), 0.0) + sn * cplx(0.0, std::sin(ph));
}

CoherenceRequirements coherence_requirements(const PrismPairSpec& spec, Geometry geometry,
                                             double y, double z, double phi,
                                             const NeutronState& state, const Constants& c) {
    (void)phi;  // enters only beyond this truncation
    const double a1 = deflection_scale(spec.B1, state.v0, c);
    const double a2 = deflection_scale(spec.B2, state.v0, c);
    const double D = spec.prism_spacing();
    CoherenceRequirements r;
    r.dz0 = 2.0 * y * (a2 - a1);
    if (geometry == Geometry::Parallelogram)
        r.dy0 = 2.0 * ((y - z) * (a1 - a2) - D * a2);
    else
        r.dy0 = 2.0 * ((a1 + a2) * y - (a1 - a2) * z - D * a2);
    return r;
}

FringeProfile fringe_visibility(const PrismPairSpec& spec, Geometry geometry, double z,
                                const std::vector<PhiSample>& divergence,
                                const NeutronState& state, const Constants& c,
                                int samples_per_period) {
    (void)geometry;  // the defocus blur term is the same for both geometries
    if (divergence.empty())
        throw Error(ErrorCode::EmptyDistribution, "divergence distribution is empty");
    double wsum = 0.0;
    for (const auto& s : divergence) {
        if (s.weight < 0.0)
            throw Error(ErrorCode::ValidationError, "negative divergence weight");
        wsum += s.weight;
    }
    if (!(wsum > 0.0))
        throw Error(ErrorCode::EmptyDistribution, "divergence weights sum to zero");
    if (spec.B1 == spec.B2)
        throw Error(ErrorCode::DegenerateFocusing, "B1 == B2: no fringes");

    const double pref = 2.0 * c.abs_mu() / (state.v0 * c.hbar);
    const double grad = pref * (spec.B1 - spec.B2);     // half-angle phase gradient
    const double defocus = -pref * field_lever(spec, z); // coefficient of phi
    const double period = M_PI / std::fabs(grad);

    int n = std::max(8, samples_per_period);
    if (n % 2) ++n;

    FringeProfile out;
    out.y.resize(n + 1);
    out.intensity.assign(n + 1, 0.0);
    for (int j = 0; j <= n; ++j)
        out.y[j] = -period / 2.0 + period * j / n;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j <= n; ++j) {
        // pairwise-style two-pass accumulation keeps the reduction order fixed
        double acc = 0.0;
        for (const auto& s : divergence) {
            const double half = grad * out.y[j] + defocus * s.phi;
            acc += s.weight * 0.5 * (1.0 + std::cos(2.0 * half));
        }
        out.intensity[j] = acc / wsum;
    }

    const auto [imin, imax] = std::minmax_element(out.intensity.begin(), out.intensity.end());
    out.visibility = (*imax - *imin) / (*imax + *imin);
    return out;
}

}  // namespace semsans
