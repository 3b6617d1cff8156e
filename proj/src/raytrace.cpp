#include "semsans/raytrace.hpp"

#include <cmath>
#include <limits>

namespace semsans {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Mutable ray state during a trace. Velocities in (z, y); phases accumulated
// in long double to keep the oracle usable at small deflection scales.
struct RayState {
    double y, z;
    double vy, vz;
    double V;  // current potential -mu_sigma*b [J]
    double E;  // total energy [J], fixed
    double m, hbar;
    long double tau = 0.0L;
    long double int_V = 0.0L;    // [J s]
    long double kinetic = 0.0L;  // [rad]
    std::vector<RaySegment>* segments = nullptr;
    int region = 0;

    double speed2() const { return 2.0 * (E - V) / m; }

    void advance(double y1, double z1) {
        const double dy = y1 - y, dz = z1 - z;
        const double len = std::hypot(dy, dz);
        if (len == 0.0) return;
        const double v = std::sqrt(speed2());
        const double dt = len / v;
        if (segments) {
            RaySegment s;
            s.y0 = y; s.z0 = z; s.y1 = y1; s.z1 = z1;
            s.angle = std::atan2(vy, vz);
            s.speed = v;
            s.zeeman = V;
            s.dt = dt;
            s.region = region;
            segments->push_back(s);
        }
        tau += dt;
        int_V += (long double)V * dt;
        kinetic += (long double)(m * v * v) / (2.0L * hbar) * dt;
        y = y1; z = z1;
    }

    void advance_to_plane(double Z) {
        const double dt = (Z - z) / vz;
        advance(y + vy * dt, Z);
    }

    // boundary normal = z axis
    void refract_plane(double V_new) {
        const double v2 = 2.0 * (E - V_new) / m;
        const double vz2 = v2 - vy * vy;
        if (!(v2 > 0.0))
            throw Error(ErrorCode::ClassicallyForbidden, "Zeeman potential exceeds energy");
        if (!(vz2 > 0.0))
            throw Error(ErrorCode::TotalInternalReflection, "no transmitted ray at face");
        vz = std::sqrt(vz2);
        V = V_new;
    }

    // boundary along a ±45 degree line; slope refers to dy/dz of the line
    void refract_diag(double V_new, int slope) {
        const double v2 = 2.0 * (E - V_new) / m;
        if (!(v2 > 0.0))
            throw Error(ErrorCode::ClassicallyForbidden, "Zeeman potential exceeds energy");
        const double vt = (slope > 0) ? (vz + vy) / kSqrt2 : (vz - vy) / kSqrt2;
        const double vn2 = v2 - vt * vt;
        if (!(vn2 > 0.0))
            throw Error(ErrorCode::TotalInternalReflection, "no transmitted ray at film");
        const double vn = std::sqrt(vn2);
        if (slope > 0) {
            vz = (vt + vn) / kSqrt2;
            vy = (vt - vn) / kSqrt2;
        } else {
            vz = (vt + vn) / kSqrt2;
            vy = (vn - vt) / kSqrt2;
        }
        V = V_new;
    }
};

// Intersection of the current ray with the line y = slope*(z - z_hyp_center);
// returns the crossing z, or NaN when the ray is parallel.
double hyp_crossing_z(const RayState& r, double z_c, int slope) {
    const double denom = (slope > 0) ? (r.vz - r.vy) : (r.vz + r.vy);
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double t = (slope > 0) ? (r.y - (r.z - z_c)) / denom
                                 : (-(r.y) - (r.z - z_c)) / denom;
    return r.z + r.vz * t;
}

struct PrismLayout {
    double z_in, z_out, z_c;  // faces and hypotenuse center
    int hyp_slope;            // +1 or -1
    double b_first, b_second; // signed field in the entry-side / exit-side region
};

// One prism traversal: entry face, hypotenuse, exit face.
void trace_prism(RayState& r, const PrismLayout& p, double a, double mu_sig,
                 std::vector<Crossing>* crossings, int region_base) {
    r.advance_to_plane(p.z_in);
    if (!(std::fabs(r.y) < a / 2.0))
        throw Error(ErrorCode::MissedAperture, "ray outside the prism entry face");
    r.refract_plane(-mu_sig * p.b_first);
    r.region = region_base;

    const double zx = hyp_crossing_z(r, p.z_c, p.hyp_slope);
    if (!(zx > p.z_in && zx < p.z_out))
        throw Error(ErrorCode::MissedAperture, "ray misses the hypotenuse film");
    const double dt = (zx - r.z) / r.vz;
    const double yx = r.y + r.vy * dt;
    if (!(std::fabs(yx) < a / 2.0))
        throw Error(ErrorCode::MissedAperture, "hypotenuse crossing outside the aperture");
    r.advance(yx, zx);
    if (crossings) crossings->push_back({yx, zx});
    r.refract_diag(-mu_sig * p.b_second, p.hyp_slope);
    r.region = region_base + 1;

    r.advance_to_plane(p.z_out);
    if (!(std::fabs(r.y) < a / 2.0))
        throw Error(ErrorCode::MissedAperture, "ray outside the prism exit face");
    r.refract_plane(0.0);
    r.region = 0;
}

void check_common_axis(const BeamlineConfig& config) {
    const auto& n0 = config.pairs.front().field_axis;
    for (const auto& p : config.pairs) {
        for (int k = 0; k < 3; ++k)
            if (std::fabs(p.field_axis[k] - n0[k]) > 1e-12)
                throw Error(ErrorCode::ValidationError,
                            "exact tracing requires a common field axis across pairs");
    }
}

SpinPath run_trace(const BeamlineConfig& config, const NeutronState& state, Spin spin,
                   double y0_override, bool has_override) {
    check_common_axis(config);
    const Constants& c = config.constants;
    const double mu_sig = mu_sigma(spin, c);
    const double v0 = state.v0;
    const double phi = state.divergence;

    SpinPath path;
    RayState r;
    r.segments = &path.segments;
    const PrismPairSpec& first = config.pairs.front();
    r.z = first.z_center1 - first.a / 2.0;
    r.y = has_override ? y0_override : state.y0;
    r.vy = v0 * std::sin(phi);
    r.vz = v0 * std::cos(phi);
    r.V = 0.0;
    r.E = 0.5 * c.m * v0 * v0;
    r.m = c.m;
    r.hbar = c.hbar;

    int pair_index = 0;
    for (const auto& pair : config.pairs) {
        const double zc1 = pair.z_center1;
        const double zc2 = zc1 + pair.prism_spacing();
        // prism 1: entry-side region -B1, exit-side +B1, hypotenuse slope +1
        PrismLayout p1{zc1 - pair.a / 2.0, zc1 + pair.a / 2.0, zc1, +1, -pair.B1, +pair.B1};
        trace_prism(r, p1, pair.a, mu_sig, &path.hyp_crossings, 10 * pair_index + 1);
        PrismLayout p2;
        if (pair.geometry == Geometry::Parallelogram)
            p2 = {zc2 - pair.a / 2.0, zc2 + pair.a / 2.0, zc2, +1, +pair.B2, -pair.B2};
        else
            p2 = {zc2 - pair.a / 2.0, zc2 + pair.a / 2.0, zc2, -1, -pair.B2, +pair.B2};
        trace_prism(r, p2, pair.a, mu_sig, &path.hyp_crossings, 10 * pair_index + 3);
        ++pair_index;
    }

    path.tau = (double)r.tau;
    path.int_V = (double)r.int_V;
    path.larmor = (double)(-r.int_V / (long double)c.hbar);
    path.kinetic = (double)r.kinetic;
    path.angle_out = std::atan2(r.vy, r.vz);
    path.y_out = r.y;
    path.z_out = r.z;
    return path;
}

}  // namespace

SpinPath trace_spin(const BeamlineConfig& config, const NeutronState& state, Spin spin) {
    return run_trace(config, state, spin, 0.0, false);
}

TraceResult trace_exact(const BeamlineConfig& config, const NeutronState& state,
                        const Constants& c) {
    TraceResult tr;
    tr.up = trace_spin(config, state, Spin::Up);
    tr.down = trace_spin(config, state, Spin::Down);

    const double su = std::tan(tr.up.angle_out);
    const double sd = std::tan(tr.down.angle_out);
    if (su == sd)
        throw Error(ErrorCode::DegenerateFocusing, "outgoing spin rays are parallel");
    tr.z_f = (tr.down.y_out - tr.up.y_out + su * tr.up.z_out - sd * tr.down.z_out) / (su - sd);
    tr.y_f = tr.up.y_out + su * (tr.z_f - tr.up.z_out);
    tr.x_f = state.x0;

    const double v0 = state.v0;
    const double du = std::hypot(tr.y_f - tr.up.y_out, tr.z_f - tr.up.z_out)
                      * ((tr.z_f >= tr.up.z_out) ? 1.0 : -1.0);
    const double dd = std::hypot(tr.y_f - tr.down.y_out, tr.z_f - tr.down.z_out)
                      * ((tr.z_f >= tr.down.z_out) ? 1.0 : -1.0);
    tr.t_f_up = tr.up.tau + du / v0;
    tr.t_f_down = tr.down.tau + dd / v0;
    const double free_rate = 0.5 * c.m * v0 * v0 / c.hbar;  // kinetic phase rate
    tr.larmor_up = tr.up.larmor;
    tr.larmor_down = tr.down.larmor;
    tr.kinetic_up = tr.up.kinetic + free_rate * (du / v0);
    tr.kinetic_down = tr.down.kinetic + free_rate * (dd / v0);
    return tr;
}

double entry_for_arrival(const BeamlineConfig& config, const NeutronState& state,
                         Spin spin, double y, double z) {
    // arrival(y0) is affine in y0 at fixed divergence: two evaluations fix it,
    // one more iteration guards against roundoff.
    auto arrival = [&](double y0) {
        SpinPath p = run_trace(config, state, spin, y0, true);
        return p.y_out + std::tan(p.angle_out) * (z - p.z_out);
    };
    double a0 = state.y0, a1 = state.y0 + 1e-4 * (std::fabs(state.y0) + 1.0);
    double f0 = arrival(a0) - y, f1 = arrival(a1) - y;
    for (int it = 0; it < 8; ++it) {
        if (f1 == f0) break;
        const double a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
        a0 = a1; f0 = f1;
        a1 = a2; f1 = arrival(a2) - y;
        if (std::fabs(f1) < 1e-15 * (std::fabs(y) + 1e-6)) break;
    }
    return a1;
}

OraclePhase oracle_relative_phase(const BeamlineConfig& config, const NeutronState& state,
                                  double y, double z) {
    const Constants& c = config.constants;
    const double v0 = state.v0;
    const double phi = state.divergence;
    const double k0 = c.m * v0 / c.hbar;
    const double z_entry = config.pairs.front().z_center1 - config.pairs.front().a / 2.0;

    OraclePhase out;
    long double tot[2] = {0.0L, 0.0L};
    long double lar[2] = {0.0L, 0.0L};
    int idx = 0;
    for (Spin spin : {Spin::Up, Spin::Down}) {
        const double y0 = entry_for_arrival(config, state, spin, y, z);
        SpinPath p = run_trace(config, state, spin, y0, true);
        const long double extra = std::hypot(y - p.y_out, z - p.z_out)
                                  * ((z >= p.z_out) ? 1.0L : -1.0L) / v0;
        const long double tau = (long double)p.tau + extra;
        // Phi = k0 . e + k0 v0 tau - (2/hbar) int V dt  (common-time two-point
        // construction; the overall -(k0 v0/2) T term is spin-independent)
        const long double init = (long double)k0 *
            ((long double)std::sin(phi) * y0 + (long double)std::cos(phi) * z_entry);
        const long double zeeman2 = 2.0L * (long double)p.int_V / c.hbar;
        tot[idx] = init + (long double)k0 * v0 * tau - zeeman2;
        lar[idx] = -(long double)p.int_V / c.hbar;
        if (spin == Spin::Up) out.y0_up = y0; else out.y0_down = y0;
        ++idx;
    }
    out.relative = (double)(tot[0] - tot[1]);
    out.larmor = (double)(lar[0] - lar[1]);
    out.kinetic = out.relative - out.larmor;
    out.global = (double)((tot[0] + tot[1]) / 2.0L);
    return out;
}

BeamlineConfig single_pair_config(const PrismPairSpec& spec, double detector_z,
                                  const Constants& c) {
    BeamlineConfig config;
    PrismPairSpec p = spec;
    p.L1 = detector_z - p.z_center1;
    p.L2 = p.L1 - p.prism_spacing();
    config.pairs.push_back(p);
    config.detector_z = detector_z;
    config.constants = c;
    return config;
}

// -- closed forms --------------------------------------------------------------

DeflectionChains deflection_chain(const PrismPairSpec& spec, const NeutronState& state,
                                  const Constants& c) {
    DeflectionChains out;
    const double v0 = state.v0;
    const double phi = state.divergence;
    for (Spin spin : {Spin::Up, Spin::Down}) {
        const double mu_s = mu_sigma(spin, c);
        DeflectionChain d;
        d.gamma0 = (1.0 + mu_s * spec.B1 / (c.m * v0 * v0)) * phi;
        const double v1m2 = v0 * v0 - 2.0 * mu_s * spec.B1 / c.m;  // first region, -B1
        d.gamma1 = -mu_s * (2.0 * spec.B1) / (c.m * v1m2) * std::tan(M_PI / 4.0 + d.gamma0);
        if (spec.geometry == Geometry::Parallelogram) {
            const double v2p2 = v0 * v0 + 2.0 * mu_s * spec.B2 / c.m;  // region 2A, +B2
            d.gamma2 = mu_s * (2.0 * spec.B2) / (c.m * v2p2)
                       * std::tan(M_PI / 4.0 + d.gamma0 + d.gamma1);
        } else {
            const double v2m2 = v0 * v0 - 2.0 * mu_s * spec.B2 / c.m;  // region 2A, -B2
            // away-from-normal deflection mapped to the z-axis angle increment
            d.gamma2 = mu_s * (2.0 * spec.B2) / (c.m * v2m2)
                       * std::tan(M_PI / 4.0 - d.gamma0 - d.gamma1);
        }
        (spin == Spin::Up ? out.up : out.down) = d;
    }
    return out;
}

namespace {

struct Alphas {
    double a1, a2, den;
};

Alphas alphas_or_throw(const PrismPairSpec& spec, double v0, const Constants& c) {
    if (spec.B1 == spec.B2)
        throw Error(ErrorCode::DegenerateFocusing, "B1 == B2: no finite focus");
    const double a1 = deflection_scale(spec.B1, v0, c);
    const double a2 = deflection_scale(spec.B2, v0, c);
    return {a1, a2, a1 - a2};
}

}  // namespace

FocusPoint focus_parallelogram(const PrismPairSpec& spec, const NeutronState& state,
                               const Constants& c) {
    const auto [a1, a2, den] = alphas_or_throw(spec, state.v0, c);
    const double D = spec.prism_spacing();
    const double a = spec.a;
    const double y0 = state.y0;
    const double phi = state.divergence;
    const double ratio = a2 / den;
    FocusPoint f;
    f.y_f = y0 + phi * (y0 + a / 2.0 - D * ratio);
    f.z_f = y0 - D * ratio + phi * (a / 2.0 + 2.0 * y0 - D * ratio);
    f.x_f = state.x0;
    return f;
}

FocusPoint focus_triangular(const PrismPairSpec& spec, const NeutronState& state,
                            const Constants& c) {
    const auto [a1, a2, den] = alphas_or_throw(spec, state.v0, c);
    const double D = spec.prism_spacing();
    const double a = spec.a;
    const double g = spec.gap;
    const double y0 = state.y0;
    const double phi = state.divergence;
    FocusPoint f;
    f.y_f = y0 + phi * (a * (a1 - 3.0 * a2) / 2.0 - g * a2 + y0 * (a1 + a2)) / den;
    f.z_f = (y0 * (a1 + a2) - D * a2) / den
          + phi * (a * (a1 * a1 + 6.0 * a1 * a2 - 3.0 * a2 * a2) / 2.0
                   + g * a2 * (3.0 * a1 - a2)
                   + 2.0 * y0 * (a1 * a1 - 4.0 * a1 * a2 + a2 * a2)) / (den * den);
    f.x_f = state.x0;
    return f;
}

double entry_from_focus(const PrismPairSpec& spec, Geometry geometry, double y_f,
                        double phi, const Constants& c) {
    (void)c;
    if (spec.B1 == spec.B2)
        throw Error(ErrorCode::DegenerateFocusing, "B1 == B2: no finite focus");
    const double D = spec.prism_spacing();
    if (geometry == Geometry::Parallelogram)
        return y_f - phi * (y_f + spec.a / 2.0 - D * spec.B2 / (spec.B1 - spec.B2));
    return y_f - phi * (spec.a * (spec.B1 - 3.0 * spec.B2) / 2.0 - spec.gap * spec.B2
                        + y_f * (spec.B1 + spec.B2)) / (spec.B1 - spec.B2);
}

ArrivalTimes arrival_times(const PrismPairSpec& spec, Geometry geometry,
                           const NeutronState& state, const Constants& c) {
    const auto [a1, a2, den] = alphas_or_throw(spec, state.v0, c);
    const double g = spec.gap;
    const double a = spec.a;
    const double y0 = state.y0;
    const double phi = state.divergence;
    const double Q = (a * (a1 - 3.0 * a2) / 2.0 - g * a2) / den;
    ArrivalTimes t;
    t.v0 = state.v0;
    for (Spin spin : {Spin::Up, Spin::Down}) {
        const double s = spin_sign(spin);
        double v0t;
        if (geometry == Geometry::Parallelogram) {
            v0t = (1.0 + phi) * Q + y0 * (1.0 + 2.0 * phi - s * den);
        } else {
            const double R = (a * (a1 * a1 + 6.0 * a1 * a2 - 3.0 * a2 * a2) / 2.0
                              + g * a2 * (3.0 * a1 - a2)
                              + 2.0 * y0 * (a1 * a1 - 4.0 * a1 * a2 + a2 * a2)) / (den * den);
            v0t = Q + y0 * (a1 + a2) / den - s * y0 * den + phi * R;
        }
        (spin == Spin::Up ? t.t_up : t.t_down) = v0t / state.v0;
    }
    return t;
}

}  // namespace semsans
