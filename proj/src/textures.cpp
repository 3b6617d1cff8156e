#include "semsans/textures.hpp"

#include <cmath>

namespace semsans {

namespace {
const cplx I{0.0, 1.0};

bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }
}

double kappa_parallelogram(double B_a, double B_b, double phi, double v0,
                           const Constants& c) {
    return 2.0 * c.abs_mu() * std::fabs(B_a - B_b) * (1.0 + phi) / (v0 * c.hbar);
}

double kappa_triangular(double B_a, double B_b, double phi, double v0,
                        const Constants& c) {
    return 2.0 * c.abs_mu() * (std::fabs(B_a - B_b) + (B_a + B_b) * phi) / (v0 * c.hbar);
}

double texture_length_r0(double v0, double dB, const Constants& c) {
    return v0 * c.hbar / (2.0 * c.abs_mu() * std::fabs(dB));
}

KappaSpec kappa_from_fields(const CheckerboardFields& fields, Geometry geometry,
                            double phi, double v0, const Constants& c) {
    KappaSpec k;
    k.geometry = geometry;
    k.B = {fields.B1, fields.B2, fields.B3, fields.B4};
    k.divergence = phi;
    if (geometry == Geometry::Parallelogram) {
        k.kappa_y = kappa_parallelogram(fields.B1, fields.B2, phi, v0, c);
        k.kappa_x = kappa_parallelogram(fields.B3, fields.B4, phi, v0, c);
    } else {
        k.kappa_y = kappa_triangular(fields.B1, fields.B2, phi, v0, c);
        k.kappa_x = kappa_triangular(fields.B3, fields.B4, phi, v0, c);
    }
    return k;
}

CheckerboardFields solve_checkerboard_fields(double B1, double L1, double L2,
                                             double L3, double L4) {
    if (L1 == L2 || L3 == L4)
        throw Error(ErrorCode::DegenerateDistances, "degenerate prism distances");
    if (!(L1 > L2 && L2 > L3 && L3 > L4 && L4 > 0.0))
        throw Error(ErrorCode::ValidationError, "distances must satisfy L1>L2>L3>L4>0");
    if (!(B1 > 0.0))
        throw Error(ErrorCode::ValidationError, "B1 must be positive");
    CheckerboardFields f;
    f.B1 = B1;
    f.B2 = B1 * L1 / L2;
    f.B3 = B1 * L4 * (L1 - L2) / (L2 * (L3 - L4));
    f.B4 = B1 * L3 * (L1 - L2) / (L2 * (L3 - L4));
    return f;
}

CheckerboardFields solve_checkerboard_capped(double field_cap, double L1, double L2,
                                             double L3, double L4) {
    if (!(field_cap > 0.0))
        throw Error(ErrorCode::ValidationError, "field cap must be positive");
    // B2 = B1 L1/L2 is the largest field for L1 > L2 > L3 > L4
    return solve_checkerboard_fields(field_cap * L2 / L1, L1, L2, L3, L4);
}

SpinOperator u_pair(double kappa_x, double kappa_y, double x, double y) {
    const double cx = std::cos(kappa_x * x), sx = std::sin(kappa_x * x);
    const double cy = std::cos(kappa_y * y), sy = std::sin(kappa_y * y);
    SpinOperator u;
    u(0, 0) = cplx(cx * cy, -sx * sy);
    u(0, 1) = cplx(-sx * cy, cx * sy);
    u(1, 0) = cplx(sx * cy, cx * sy);
    u(1, 1) = cplx(cx * cy, sx * sy);
    return u;
}

std::array<double, 3> spin_texture_point(double kappa, double theta_in, double phi_in,
                                         double x, double y) {
    const double st = std::sin(theta_in), ct = std::cos(theta_in);
    const double cp = std::cos(phi_in), sp = std::sin(phi_in);
    const double c2x = std::cos(2.0 * kappa * x), s2x = std::sin(2.0 * kappa * x);
    const double c2y = std::cos(2.0 * kappa * y), s2y = std::sin(2.0 * kappa * y);
    const double wave = ct * c2y - st * sp * s2y;
    return {st * cp * c2x + s2x * wave,
            st * sp * c2y + ct * s2y,
            -st * cp * s2x + c2x * wave};
}

std::array<double, 3> oam_density_point(double kappa, double k0z, double theta_in,
                                        double phi_in, double phi_div, double x,
                                        double y, bool subtract_carrier) {
    const double st = std::sin(theta_in), ct = std::cos(theta_in);
    const double cp = std::cos(phi_in), sp = std::sin(phi_in);
    const double c2y = std::cos(2.0 * kappa * y), s2y = std::sin(2.0 * kappa * y);
    const double common = ct * s2y + st * (cp + sp * c2y);
    const double carrier = subtract_carrier ? 0.0 : k0z;
    return {carrier * y + kappa * y / (1.0 + phi_div) * common,
            -carrier * x - kappa * x / (1.0 + phi_div) * common,
            kappa * (y * ct * s2y + st * (y * sp * c2y + x * cp))};
}

namespace {

void grid_coordinates(const GridSpec& spec, double kappa, FieldGrid& g) {
    GridSpec s = spec;
    if (s.nx < 2 || s.ny < 2)
        throw Error(ErrorCode::ValidationError, "grid needs at least 2 samples per axis");
    if (s.x_min == s.x_max) {
        const double half = s.cells * M_PI / kappa;
        s.x_min = -half; s.x_max = half;
    }
    if (s.y_min == s.y_max) {
        const double half = s.cells * M_PI / kappa;
        s.y_min = -half; s.y_max = half;
    }
    g.nx = s.nx; g.ny = s.ny;
    g.x.resize(s.nx); g.y.resize(s.ny);
    for (int i = 0; i < s.nx; ++i)
        g.x[i] = s.x_min + (s.x_max - s.x_min) * i / (s.nx - 1);
    for (int j = 0; j < s.ny; ++j)
        g.y[j] = s.y_min + (s.y_max - s.y_min) * j / (s.ny - 1);
}

}  // namespace

namespace {

// local precession angle of the two-pair operator: tr(U_pair)/2 = cos kx cos ky
double precession_angle(double kappa, double x, double y) {
    double cc = std::cos(kappa * x) * std::cos(kappa * y);
    cc = std::min(1.0, std::max(-1.0, cc));
    return 2.0 * std::acos(cc);
}

}  // namespace

void fill_spin_texture(FieldGrid& g, double kappa, double theta_in, double phi_in,
                       EvalMode mode) {
    g.bloch.resize((size_t)g.nx * g.ny);
    g.phase.resize((size_t)g.nx * g.ny);
    if (mode == EvalMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const size_t at = (size_t)j * g.nx + i;
                g.bloch[at] = spin_texture_point(kappa, theta_in, phi_in, g.x[i], g.y[j]);
                g.phase[at] = precession_angle(kappa, g.x[i], g.y[j]);
            }
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const size_t at = (size_t)j * g.nx + i;
                g.bloch[at] = spin_texture_point(kappa, theta_in, phi_in, g.x[i], g.y[j]);
                g.phase[at] = precession_angle(kappa, g.x[i], g.y[j]);
            }
    }
}

FieldGrid spin_texture(double kappa, double theta_in, double phi_in,
                       const GridSpec& grid, EvalMode mode) {
    FieldGrid g;
    grid_coordinates(grid, kappa, g);
    fill_spin_texture(g, kappa, theta_in, phi_in, mode);
    return g;
}

void fill_oam_density(FieldGrid& g, double kappa, double k0z, double theta_in,
                      double phi_in, double phi_div, bool subtract_carrier,
                      EvalMode mode) {
    g.oam.resize((size_t)g.nx * g.ny);
    if (mode == EvalMode::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static)
#endif
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                g.oam[(size_t)j * g.nx + i] = oam_density_point(
                    kappa, k0z, theta_in, phi_in, phi_div, g.x[i], g.y[j], subtract_carrier);
    } else {
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                g.oam[(size_t)j * g.nx + i] = oam_density_point(
                    kappa, k0z, theta_in, phi_in, phi_div, g.x[i], g.y[j], subtract_carrier);
    }
}

FieldGrid oam_density(double kappa, double k0z, double theta_in, double phi_in,
                      double phi_div, const GridSpec& grid, bool subtract_carrier,
                      EvalMode mode) {
    FieldGrid g;
    grid_coordinates(grid, kappa, g);
    fill_oam_density(g, kappa, k0z, theta_in, phi_in, phi_div, subtract_carrier, mode);
    return g;
}

SpinOperator LatticeExpansion::first_order(double azimuth) const {
    const cplx lp = std::exp(I * azimuth);
    const cplx lm = std::exp(-I * azimuth);
    // sigma_+ = [0 1; 0 0], sigma_- = [0 0; 1 0]
    const SpinOperator sp{{cplx(0), cplx(1), cplx(0), cplx(0)}};
    const SpinOperator sm{{cplx(0), cplx(0), cplx(1), cplx(0)}};
    const SpinOperator one = SpinOperator::identity();
    const SpinOperator sz = SpinOperator::sigma_z();
    SpinOperator out = SpinOperator::zero();
    out = out + sp * (ladder[0] * lp) + sm * (ladder[1] * lp)
              + sp * (ladder[2] * lm) + sm * (ladder[3] * lm)
              + one * (ladder[4] * lp) + one * (ladder[5] * lm)
              + sz * (ladder[6] * lp) + sz * (ladder[7] * lm);
    return out;
}

SpinOperator LatticeExpansion::evaluate(double kappa, double r, double azimuth) const {
    return (zeroth + first_order(azimuth) * cplx(kappa * r, 0.0)) * global;
}

LatticeExpansion oam_lattice_expansion(double kappa, double m_idx, double n_idx) {
    (void)kappa;
    const double m2 = 2.0 * m_idx, n2 = 2.0 * n_idx;
    if (!near_integer(m2) || !near_integer(n2))
        throw Error(ErrorCode::InvalidLatticeIndex,
                    "lattice indices must be integer or half-odd integer");
    const long m2i = std::lround(m2), n2i = std::lround(n2);
    const bool m_int = (m2i % 2) == 0, n_int = (n2i % 2) == 0;

    auto int_sign = [](long twice) {  // (-1)^m for integer m
        return ((twice / 2) % 2 != 0) ? -1.0 : 1.0;
    };
    auto half_sign = [](long twice) {  // sin(m pi) = (-1)^(m - 1/2) for half-odd m
        const long p = (twice - 1) / 2;
        return (p % 2 != 0) ? -1.0 : 1.0;
    };

    LatticeExpansion e;
    if (m_int && n_int) {
        e.family = LatticeFamily::Integer;
        e.global = cplx(int_sign(m2i) * int_sign(n2i), 0.0);
        e.zeroth = SpinOperator::identity();
        e.ladder[1] = cplx(1.0, 0.0);   // l+ sigma-
        e.ladder[2] = cplx(-1.0, 0.0);  // l- sigma+
    } else if (!m_int && !n_int) {
        e.family = LatticeFamily::HalfOdd;
        e.global = -I * half_sign(m2i) * half_sign(n2i);
        e.zeroth = SpinOperator::sigma_z();
        e.ladder[0] = cplx(1.0, 0.0);  // l+ sigma+
        e.ladder[3] = cplx(1.0, 0.0);  // l- sigma-
    } else if (!m_int && n_int) {
        e.family = LatticeFamily::MixedHalfInt;
        e.global = cplx(-half_sign(m2i) * int_sign(n2i), 0.0);
        e.zeroth = SpinOperator::sigma_y() * I;  // i sigma_y
        e.ladder[4] = cplx(0.5, 0.0);   // l+ 1
        e.ladder[5] = cplx(0.5, 0.0);   // l- 1
        e.ladder[6] = cplx(0.5, 0.0);   // l+ sigma_z
        e.ladder[7] = cplx(-0.5, 0.0);  // l- sigma_z
    } else {
        e.family = LatticeFamily::MixedIntHalf;
        e.global = I * cplx(int_sign(m2i) * half_sign(n2i), 0.0);
        e.zeroth = SpinOperator::sigma_x();
        e.ladder[4] = cplx(0.5, 0.0);
        e.ladder[5] = cplx(-0.5, 0.0);
        e.ladder[6] = cplx(-0.5, 0.0);
        e.ladder[7] = cplx(-0.5, 0.0);
    }
    return e;
}

std::vector<MomentumKick> momentum_kicks(double kappa_x, double kappa_y,
                                         const Spinor& psi_in) {
    auto proj_x = [](int sign) {
        const double s = sign;
        return SpinOperator{{cplx(0.5), cplx(0.5 * s), cplx(0.5 * s), cplx(0.5)}};
    };
    auto proj_y = [](int sign) {
        const double s = sign;
        return SpinOperator{{cplx(0.5), cplx(0.0, -0.5 * s), cplx(0.0, 0.5 * s), cplx(0.5)}};
    };
    std::vector<MomentumKick> out;
    // e^{-i kx x} with P+^y, e^{+i kx x} with P-^y; e^{+i ky y} with P+^x, ...
    const int sx[4] = {+1, +1, -1, -1};
    const int sy_kick[4] = {+1, -1, +1, -1};
    for (int k = 0; k < 4; ++k) {
        MomentumKick mk;
        mk.dkx = (sx[k] > 0) ? -kappa_x : +kappa_x;
        mk.dky = (sy_kick[k] > 0) ? +kappa_y : -kappa_y;
        const SpinOperator op = proj_y(sx[k]) * proj_x(sy_kick[k]);
        mk.amplitude = op * psi_in;
        // degenerate kicks (kappa = 0 along an axis) combine coherently
        bool merged = false;
        for (auto& prev : out) {
            if (prev.dkx == mk.dkx && prev.dky == mk.dky) {
                prev.amplitude[0] += mk.amplitude[0];
                prev.amplitude[1] += mk.amplitude[1];
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(mk);
    }
    return out;
}

std::vector<double> azimuthal_current(const PolarGrid& grid, int ell, const Constants& c) {
    const size_t nr = grid.r.size(), np = grid.phi.size();
    if (np < 3)
        throw Error(ErrorCode::ValidationError, "need at least 3 azimuthal samples");
    if (grid.f.size() != nr * np)
        throw Error(ErrorCode::ValidationError, "polar grid sample count mismatch");
    for (double r : grid.r)
        if (!(r > 0.0))
            throw Error(ErrorCode::SingularAxis, "azimuthal current undefined at r <= 0");
    const double dphi = grid.phi[1] - grid.phi[0];
    std::vector<double> out(nr * np, 0.0);
    for (size_t i = 0; i < nr; ++i) {
        for (size_t k = 0; k < np; ++k) {
            const size_t kp = (k + 1) % np, km = (k + np - 1) % np;
            const cplx f = grid.f[i * np + k];
            const cplx dfdphi = (grid.f[i * np + kp] - grid.f[i * np + km]) / (2.0 * dphi);
            const double im = std::imag(std::conj(f) * dfdphi);
            out[i * np + k] = c.hbar / (c.m * grid.r[i]) * (im + ell * std::norm(f));
        }
    }
    return out;
}

}  // namespace semsans
