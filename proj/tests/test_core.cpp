#include <cmath>
#include <random>

#include "doctest.h"
#include "semsans/core.hpp"
#include "semsans/textures.hpp"

using namespace semsans;

TEST_CASE("constants sets are self-consistent") {
    const Constants c = Constants::codata2018();
    CHECK_NOTHROW(c.validate());
    CHECK(c.mu < 0.0);
    CHECK(std::fabs(c.h - 2.0 * M_PI * c.hbar) <= 1e-12 * c.h);
    CHECK_NOTHROW(Constants::rounded_moment().validate());
    CHECK(Constants::scaled(0.01).mu == -0.01);
}

TEST_CASE("wavelength to speed") {
    const Constants c = Constants::codata2018();
    const double v0 = wavelength_to_speed(1e-9, c);
    CHECK(v0 == doctest::Approx(395.6034012071464).epsilon(1e-12));
    CHECK(v0 * 1e-9 == doctest::Approx(c.h / c.m).epsilon(1e-12));
    CHECK(wavelength_to_speed(2e-9, c) == doctest::Approx(v0 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(wavelength_to_speed(0.0, c), Error);
    CHECK_THROWS_AS(wavelength_to_speed(-1e-9, c), Error);

    const NeutronState s = NeutronState::from_wavelength(1e-9, c);
    CHECK(s.v0 * s.wavelength == doctest::Approx(c.h / c.m).epsilon(1e-12));
}

TEST_CASE("entanglement lengths") {
    const Constants c = Constants::codata2018();
    CHECK(entanglement_length_sesans(1e-9, 0.0, 1.3, 0.9, c) == 0.0);
    CHECK(entanglement_length_sesans(1e-9, 0.1, 1.0, 1.0, c) == 0.0);
    CHECK(entanglement_length_semsans(1e-9, 0.1, 0.1, 1.0, c) == 0.0);
    CHECK(entanglement_length_semsans(1e-9, 0.1, 0.15, 0.0, c) == 0.0);

    // xi_SE for equal-field SESANS agrees with the (lambda/p) L identity built
    // from the same |dB|
    const double B = 0.1, base = 0.4, lam = 1e-9;
    const double xi = entanglement_length_sesans(lam, B, 1.3, 0.9, c);
    const double p = fringe_period(lam, B, 2.0 * B, c);  // |B1-B2| = B
    CHECK(xi == doctest::Approx(lam * base / p).epsilon(1e-12));

    const double xi_sem = entanglement_length_semsans(lam, 0.1038, 0.15, 1.0, c);
    const double p_sem = fringe_period(lam, 0.1038, 0.15, c);
    CHECK(xi_sem == doctest::Approx(lam * 1.0 / p_sem).epsilon(1e-12));
}

TEST_CASE("fringe period") {
    const Constants c = Constants::codata2018();
    const double p = fringe_period(1e-9, 0.0, 0.0462, c);
    CHECK(p == doctest::Approx(1.4680154760823536e-4).epsilon(1e-12));
    CHECK(std::fabs(p - 145e-6) <= 0.03 * 145e-6);  // within 3% of the quoted value
    CHECK(fringe_period(1e-9, 0.0, 0.0231, c) == doctest::Approx(2.0 * p).epsilon(1e-12));
    CHECK_THROWS_AS(fringe_period(1e-9, 0.1, 0.1, c), Error);
}

TEST_CASE("period-kappa and xi identities hold over random inputs") {
    const Constants c = Constants::codata2018();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double lam = (0.2 + 2.0 * uni(rng)) * 1e-9;
        const double B1 = 0.2 * uni(rng);
        const double B2 = B1 + 0.01 + 0.2 * uni(rng);
        const double v0 = wavelength_to_speed(lam, c);
        const double p = fringe_period(lam, B1, B2, c);
        const double kappa = kappa_parallelogram(B1, B2, 0.0, v0, c);
        CHECK(std::fabs(p * kappa - M_PI) <= 1e-10 * M_PI);

        const double Ls = 0.1 + 3.0 * uni(rng);
        const double xi = entanglement_length_semsans(lam, B1, B2, Ls, c);
        CHECK(xi == doctest::Approx(lam * Ls / p).epsilon(1e-12));
    }
}

TEST_CASE("state and pair validation") {
    const Constants c = Constants::codata2018();
    NeutronState s = NeutronState::from_wavelength(1e-9, c);
    s.theta_in = 4.0;
    CHECK_THROWS_AS(s.validate(), Error);

    PrismPairSpec p;
    p.a = 0.1;
    p.gap = 0.3;
    p.B1 = 0.1;
    p.B2 = 0.15;
    CHECK_NOTHROW(p.validate());
    p.field_axis = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(p.validate(), Error);
}
