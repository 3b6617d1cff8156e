#include <cmath>
#include <random>

#include "doctest.h"
#include "semsans/textures.hpp"

using namespace semsans;

TEST_CASE("checkerboard field solver") {
    const auto f = solve_checkerboard_capped(0.15, 1.3, 0.9, 0.7, 0.3);
    CHECK(f.B1 == doctest::Approx(0.1038461538461538).epsilon(1e-12));
    CHECK(f.B2 == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(f.B3 == doctest::Approx(0.03461538461538462).epsilon(1e-12));
    CHECK(f.B4 == doctest::Approx(0.08076923076923077).epsilon(1e-12));

    // equal |dB| across the two pairs
    CHECK(std::fabs(std::fabs(f.B1 - f.B2) - std::fabs(f.B3 - f.B4))
          <= 1e-12 * std::fabs(f.B1 - f.B2));

    // resulting texture period at 1 nm
    const Constants c = Constants::codata2018();
    const double v0 = wavelength_to_speed(1e-9, c);
    const double kappa = kappa_parallelogram(f.B1, f.B2, 0.0, v0, c);
    CHECK(M_PI / kappa == doctest::Approx(1.4694834915584359e-4).epsilon(1e-10));
    CHECK(std::fabs(M_PI / kappa - 145e-6) <= 0.03 * 145e-6);

    // canonical texture length r0 sits in the quoted 47-50 um window
    const double r0 = texture_length_r0(v0, std::fabs(f.B1 - f.B2), c);
    CHECK(r0 == doctest::Approx(4.677511232335251e-5).epsilon(1e-10));
    CHECK(r0 >= 45e-6);
    CHECK(r0 <= 50e-6);

    CHECK_THROWS_AS(solve_checkerboard_fields(0.1, 1.0, 1.0, 0.7, 0.3), Error);
    CHECK_THROWS_AS(solve_checkerboard_fields(0.1, 1.3, 0.9, 0.5, 0.5), Error);
    CHECK_THROWS_AS(solve_checkerboard_fields(0.1, 0.9, 1.3, 0.7, 0.3), Error);
}

TEST_CASE("kappa spec from solved checkerboard fields") {
    const Constants c = Constants::codata2018();
    const auto f = solve_checkerboard_capped(0.15, 1.3, 0.9, 0.7, 0.3);
    const double v0 = wavelength_to_speed(1e-9, c);
    const KappaSpec k = kappa_from_fields(f, Geometry::Parallelogram, 0.0, v0, c);
    // the focusing solution shares |dB| across the pairs: equal gradients
    CHECK(k.kappa_x == doctest::Approx(k.kappa_y).epsilon(1e-12));
    CHECK(k.kappa_y == doctest::Approx(kappa_parallelogram(f.B1, f.B2, 0.0, v0, c)));
    CHECK(k.B[1] == f.B2);

    // triangular variant adds the field-sum divergence term
    const KappaSpec kt = kappa_from_fields(f, Geometry::Triangular, 1e-3, v0, c);
    CHECK(kt.kappa_y > kappa_triangular(f.B1, f.B2, 0.0, v0, c));
}

TEST_CASE("u_pair basics and composition") {
    CHECK(u_pair(0.0, 0.0, 0.3, -0.2).max_abs_diff(SpinOperator::identity()) <= 1e-15);
    CHECK(u_pair(5.0, 7.0, 0.0, 0.0).max_abs_diff(SpinOperator::identity()) <= 1e-15);

    // u_pair = U_y(theta_y) U_x(theta_x) with theta_y = -kappa_x x (the n-perp
    // convention of the second pair) and theta_x = kappa_y y
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double kx = 3.0 + uni(rng), ky = 4.0 + uni(rng);
        const double x = uni(rng), y = uni(rng);
        auto rot = [](const SpinOperator& sigma, double th) {
            return SpinOperator::identity() * cplx(std::cos(th), 0.0)
                 + sigma * cplx(0.0, std::sin(th));
        };
        const SpinOperator composed =
            rot(SpinOperator::sigma_y(), -kx * x) * rot(SpinOperator::sigma_x(), ky * y);
        CHECK(u_pair(kx, ky, x, y).max_abs_diff(composed) <= 1e-12);
        CHECK(unitarity_check(u_pair(kx, ky, x, y)) <= 1e-12);
    }
}

TEST_CASE("spin texture closed forms") {
    // known value at the origin
    const auto b0 = spin_texture_point(3.0, M_PI / 2.0, M_PI / 2.0, 0.0, 0.0);
    CHECK(b0[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b0[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b0[2] == doctest::Approx(0.0).epsilon(1e-15));

    // kappa = 0: uniform texture equal to the initial Bloch vector
    const auto bu = spin_texture_point(0.0, 0.7, 1.1, 0.4, -0.2);
    CHECK(bu[0] == doctest::Approx(std::sin(0.7) * std::cos(1.1)).epsilon(1e-14));
    CHECK(bu[1] == doctest::Approx(std::sin(0.7) * std::sin(1.1)).epsilon(1e-14));
    CHECK(bu[2] == doctest::Approx(std::cos(0.7)).epsilon(1e-14));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double kappa = 2.0 + 8.0 * std::fabs(uni(rng));
        const double th = M_PI * std::fabs(uni(rng));
        const double ph = M_PI * uni(rng);
        const double x = uni(rng), y = uni(rng);
        const auto closed = spin_texture_point(kappa, th, ph, x, y);

        // operator route
        const Spinor psi = (u_pair(kappa, kappa, x, y)) * (bloch_spinor(th, ph));
        const auto op = bloch_vector(psi);
        for (int k = 0; k < 3; ++k) CHECK(std::fabs(closed[k] - op[k]) <= 1e-12);

        // pure state: unit Bloch norm
        const double norm = std::sqrt(closed[0] * closed[0] + closed[1] * closed[1]
                                      + closed[2] * closed[2]);
        CHECK(std::fabs(norm - 1.0) <= 1e-9);

        // checkerboard periodicity
        const auto shifted = spin_texture_point(kappa, th, ph, x + M_PI / kappa,
                                                y + M_PI / kappa);
        for (int k = 0; k < 3; ++k) CHECK(std::fabs(closed[k] - shifted[k]) <= 1e-12);
    }
}

TEST_CASE("texture grids: serial and parallel kernels agree") {
    GridSpec gs;
    gs.nx = gs.ny = 64;
    const FieldGrid a = spin_texture(2.5, 1.0, 0.4, gs, EvalMode::Serial);
    const FieldGrid b = spin_texture(2.5, 1.0, 0.4, gs, EvalMode::Parallel);
    REQUIRE(a.bloch.size() == b.bloch.size());
    for (size_t i = 0; i < a.bloch.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(a.bloch[i][k] == b.bloch[i][k]);

    const FieldGrid oa = oam_density(2.5, 100.0, 1.0, 0.4, 0.0, gs, false, EvalMode::Serial);
    const FieldGrid ob = oam_density(2.5, 100.0, 1.0, 0.4, 0.0, gs, false, EvalMode::Parallel);
    for (size_t i = 0; i < oa.oam.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(oa.oam[i][k] == ob.oam[i][k]);

    // auto-sized grid covers one unit cell
    CHECK(a.x.front() == doctest::Approx(-M_PI / 2.5).epsilon(1e-15));
    CHECK(a.x.back() == doctest::Approx(M_PI / 2.5).epsilon(1e-15));
}

TEST_CASE("OAM density closed forms") {
    // vanishing at the origin
    const auto L0 = oam_density_point(3.0, 100.0, 1.0, 0.4, 0.0, 0.0, 0.0, false);
    CHECK(L0[2] == 0.0);

    // theta = pi/2, phi_in = 0, y = 0: L_z = kappa x
    const auto L1 = oam_density_point(3.0, 100.0, M_PI / 2.0, 0.0, 0.0, 0.2, 0.0, false);
    CHECK(L1[2] == doctest::Approx(3.0 * 0.2).epsilon(1e-14));

    // carrier subtraction removes the plane-wave part only
    const auto with = oam_density_point(3.0, 100.0, 1.0, 0.4, 0.0, 0.1, 0.2, false);
    const auto without = oam_density_point(3.0, 100.0, 1.0, 0.4, 0.0, 0.1, 0.2, true);
    CHECK(with[0] - without[0] == doctest::Approx(100.0 * 0.2).epsilon(1e-12));
    CHECK(with[1] - without[1] == doctest::Approx(-100.0 * 0.1).epsilon(1e-12));
    CHECK(with[2] == without[2]);
}

namespace {

// 4th-order central differences of the spinor field psi_d = U_pair psi_in,
// independent L_z oracle: L_z = Im[psi^dag (x d_y - y d_x) psi].
double lz_finite_difference(double kappa, double th, double ph, double x, double y,
                            double h) {
    auto psi_at = [&](double xx, double yy) {
        return (u_pair(kappa, kappa, xx, yy)) * (bloch_spinor(th, ph));
    };
    auto d4 = [&](bool along_x) {
        Spinor fm2 = psi_at(along_x ? x - 2 * h : x, along_x ? y : y - 2 * h);
        Spinor fm1 = psi_at(along_x ? x - h : x, along_x ? y : y - h);
        Spinor fp1 = psi_at(along_x ? x + h : x, along_x ? y : y + h);
        Spinor fp2 = psi_at(along_x ? x + 2 * h : x, along_x ? y : y + 2 * h);
        Spinor out;
        for (int k = 0; k < 2; ++k)
            out[k] = (fm2[k] - 8.0 * fm1[k] + 8.0 * fp1[k] - fp2[k]) / (12.0 * h);
        return out;
    };
    const Spinor psi = psi_at(x, y);
    const Spinor dx = d4(true), dy = d4(false);
    cplx acc = 0.0;
    for (int k = 0; k < 2; ++k)
        acc += std::conj(psi[k]) * (x * dy[k] - y * dx[k]);
    return acc.imag();
}

}  // namespace

TEST_CASE("OAM density against the finite-difference oracle") {
    const double kappa = 2.1664e4;  // 145 um period scale
    const double th = 0.8, ph = 0.6;
    const double cell = M_PI / kappa;
    const double h = cell / 256.0;
    double max_rel = 0.0, max_abs_scale = 0.0;
    for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
            const double x = 0.31 * cell * i / 3.0, y = 0.29 * cell * j / 3.0;
            const double fd = lz_finite_difference(kappa, th, ph, x, y, h);
            const double cf = oam_density_point(kappa, 0.0, th, ph, 0.0, x, y, true)[2];
            max_abs_scale = std::max(max_abs_scale, std::fabs(cf));
            max_rel = std::max(max_rel, std::fabs(fd - cf));
        }
    }
    CHECK(max_rel <= 1e-6 * max_abs_scale);
}

TEST_CASE("lattice-point expansions") {
    const double kappa = 4.0;

    // zeroth orders
    const LatticeExpansion e00 = oam_lattice_expansion(kappa, 0.0, 0.0);
    CHECK(e00.family == LatticeFamily::Integer);
    CHECK(e00.evaluate(kappa, 0.0, 0.0).max_abs_diff(SpinOperator::identity()) <= 1e-15);

    const LatticeExpansion ehh = oam_lattice_expansion(kappa, 0.5, 0.5);
    CHECK(ehh.family == LatticeFamily::HalfOdd);
    CHECK(ehh.zeroth.max_abs_diff(SpinOperator::sigma_z()) <= 1e-15);
    // at the lattice point itself the expansion equals u_pair exactly
    CHECK(ehh.evaluate(kappa, 0.0, 0.0)
              .max_abs_diff(u_pair(kappa, kappa, 0.5 * M_PI / kappa, 0.5 * M_PI / kappa))
          <= 1e-15);

    // total-angular-momentum pairing in the integer family: only l+s- and l-s+
    CHECK(std::abs(e00.ladder[1]) == doctest::Approx(1.0));
    CHECK(std::abs(e00.ladder[2]) == doctest::Approx(1.0));
    CHECK(std::abs(e00.ladder[0]) == 0.0);
    CHECK(std::abs(e00.ladder[3]) == 0.0);
    CHECK(std::abs(e00.ladder[4]) == 0.0);
    CHECK(std::abs(e00.ladder[5]) == 0.0);

    // numeric agreement |u_pair - expansion| <= C (kappa r)^2 with C <= 5
    const double mvals[] = {0.0, 1.0, -1.0, 0.5, -0.5, 1.5};
    const double nvals[] = {0.0, -1.0, 0.5, 1.5, -0.5, 2.0};
    double C_max = 0.0;
    for (double m : mvals) {
        for (double n : nvals) {
            const LatticeExpansion e = oam_lattice_expansion(kappa, m, n);
            for (double kr : {1e-2, 5e-3, 2.5e-3}) {
                for (int q = 0; q < 8; ++q) {
                    const double az = q * M_PI / 4.0;
                    const double r = kr / kappa;
                    const double x = m * M_PI / kappa + r * std::cos(az);
                    const double y = n * M_PI / kappa + r * std::sin(az);
                    const double diff =
                        u_pair(kappa, kappa, x, y).max_abs_diff(e.evaluate(kappa, r, az));
                    C_max = std::max(C_max, diff / (kr * kr));
                }
            }
        }
    }
    CHECK(C_max <= 5.0);

    CHECK_THROWS_AS(oam_lattice_expansion(kappa, 0.3, 0.0), Error);
}

TEST_CASE("momentum kicks") {
    const double kx = 3.0, ky = 5.0;
    const Spinor up_z{cplx(1.0, 0.0), cplx(0.0, 0.0)};
    const auto kicks = momentum_kicks(kx, ky, up_z);
    REQUIRE(kicks.size() == 4);

    double prob = 0.0;
    const double mag = 1.0 / (2.0 * std::sqrt(2.0));
    for (const auto& k : kicks) {
        prob += norm2(k.amplitude);
        // every component of the |up_z> decomposition carries (+-1 +- i)/(2 sqrt 2)
        for (const cplx& amp : k.amplitude) {
            CHECK(std::abs(amp) == doctest::Approx(mag).epsilon(1e-12));
            CHECK(std::fabs(std::fabs(amp.real()) - std::fabs(amp.imag())) <= 1e-15);
        }
    }
    CHECK(prob == doctest::Approx(1.0).epsilon(1e-12));

    // frozen amplitude table for |up_z>: (dkx, dky) -> (up, down)/(2 sqrt 2)
    struct Row {
        double sx, sy;
        cplx up, dn;
    };
    const cplx e_p{1.0, 1.0};   // 2 sqrt(2) * e^{+i pi/4} / 2
    const cplx e_m{1.0, -1.0};
    const Row table[] = {
        {+1.0, +1.0, e_p, e_m},   // outgoing (+kx, +ky)
        {-1.0, -1.0, e_p, -e_m},  // (-kx, -ky)
        {+1.0, -1.0, e_m, -e_p},  // (+kx, -ky)
        {-1.0, +1.0, e_m, e_p},   // (-kx, +ky)
    };
    for (const Row& row : table) {
        bool found = false;
        for (const auto& k : kicks) {
            if (k.dkx == row.sx * kx && k.dky == row.sy * ky) {
                found = true;
                CHECK(std::abs(k.amplitude[0] - row.up / 4.0) <= 1e-15);
                CHECK(std::abs(k.amplitude[1] - row.dn / 4.0) <= 1e-15);
            }
        }
        CHECK(found);
    }

    // inverse transform reproduces u_pair psi on a grid
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Spinor psi = bloch_spinor(M_PI * std::fabs(uni(rng)), M_PI * uni(rng));
        const auto ks = momentum_kicks(kx, ky, psi);
        const double x = uni(rng), y = uni(rng);
        Spinor sum{cplx(0.0, 0.0), cplx(0.0, 0.0)};
        for (const auto& k : ks) {
            const cplx wave = std::exp(cplx(0.0, k.dkx * x + k.dky * y));
            sum[0] += wave * k.amplitude[0];
            sum[1] += wave * k.amplitude[1];
        }
        const Spinor direct = (u_pair(kx, ky, x, y)) * (psi);
        CHECK(std::abs(sum[0] - direct[0]) <= 1e-9);
        CHECK(std::abs(sum[1] - direct[1]) <= 1e-9);
    }

    // zero kicks collapse to a single component equal to the input
    const auto zero = momentum_kicks(0.0, 0.0, up_z);
    REQUIRE(zero.size() == 1);
    CHECK(std::abs(zero[0].amplitude[0] - up_z[0]) <= 1e-15);
    CHECK(std::abs(zero[0].amplitude[1] - up_z[1]) <= 1e-15);
}

TEST_CASE("azimuthal probability current") {
    const Constants c = Constants::scaled(1.0);  // hbar = m = 1

    PolarGrid g;
    const int np = 64;
    g.r = {0.5, 1.0};
    for (int k = 0; k < np; ++k) g.phi.push_back(2.0 * M_PI * k / np);

    // real, azimuth-independent f with l = 0: no current
    g.f.assign(g.r.size() * np, cplx(0.7, 0.0));
    for (double j : azimuthal_current(g, 0, c)) CHECK(j == 0.0);

    // l = 1: J m r / (hbar |f|^2) = 1
    const auto j1 = azimuthal_current(g, 1, c);
    for (size_t i = 0; i < g.r.size(); ++i)
        for (int k = 0; k < np; ++k) {
            const double val = j1[i * np + k] * c.m * g.r[i] / (c.hbar * 0.49);
            CHECK(val == doctest::Approx(1.0).epsilon(1e-8));
        }

    // winding phase e^{i phi} with l = 0 recovers the same current numerically
    for (size_t i = 0; i < g.r.size(); ++i)
        for (int k = 0; k < np; ++k)
            g.f[i * np + k] = 0.7 * std::exp(cplx(0.0, g.phi[k]));
    const auto jw = azimuthal_current(g, 0, c);
    CHECK(jw[0] == doctest::Approx(c.hbar * 0.49 / (c.m * 0.5)).epsilon(1e-2));

    PolarGrid bad = g;
    bad.r[0] = 0.0;
    CHECK_THROWS_AS(azimuthal_current(bad, 0, c), Error);
}

TEST_CASE("azimuthal current sign near a lattice point follows the ladder coefficient") {
    const Constants c = Constants::scaled(1.0);
    const double kappa = 4.0;
    const LatticeExpansion e = oam_lattice_expansion(kappa, 0.0, 0.0);
    // integer family on |up_z>: the down component winds as +l (coefficient of
    // l+ sigma- is +1); on |down_z> the up component winds as -l
    PolarGrid g;
    const int np = 48;
    g.r = {1e-3, 2e-3};
    for (int k = 0; k < np; ++k) g.phi.push_back(2.0 * M_PI * k / np);

    auto mean_current = [&](const Spinor& in, int component) {
        g.f.clear();
        for (double r : g.r)
            for (double az : g.phi) {
                const Spinor out =
                    u_pair(kappa, kappa, r * std::cos(az), r * std::sin(az)) * in;
                g.f.push_back(out[component]);
            }
        double mean = 0.0;
        for (double j : azimuthal_current(g, 0, c)) mean += j;
        return mean;
    };

    CHECK(mean_current({cplx(1.0, 0.0), cplx(0.0, 0.0)}, 1) > 0.0);
    CHECK(e.ladder[1].real() > 0.0);
    CHECK(mean_current({cplx(0.0, 0.0), cplx(1.0, 0.0)}, 0) < 0.0);
    CHECK(e.ladder[2].real() < 0.0);
}
