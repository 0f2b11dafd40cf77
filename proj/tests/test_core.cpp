#include "doctest.h"

#include <cmath>

#include "imtk/core.hpp"
#include "imtk/errors.hpp"
#include "imtk/noise.hpp"

#include "helpers.hpp"

using namespace imtk;
using testutil::rel;

TEST_SUITE("core") {

TEST_CASE("physical constants carry their defining values") {
    CHECK(constants::pi == rel(3.14159265358979323846, 1e-15));
    CHECK(constants::mu0 == rel(4.0 * constants::pi * 1e-7, 1e-15));
    CHECK(constants::eps0 == 8.854187817e-12);
    CHECK(constants::bohr_magneton == 9.27e-24);
    CHECK(constants::avogadro == 6.02e23);
    CHECK(constants::earth_field_t == 5e-5);
    CHECK(constants::fridge_field_t == 1e-2);
    CHECK(constants::finger_resistivity_ohm_m == 11.0);
    CHECK(constants::z0_ohm == 50.0);
    CHECK(constants::z_bio_ohm == 600.0);
    CHECK(constants::s11_floor_db == -120.0);
    CHECK(constants::sweep_rate_hz == 30.0);
    CHECK(constants::magnetometer_rate_hz == 10.0);
}

TEST_CASE("magnitude is the complex modulus") {
    CHECK(magnitude(Complex(1.5, -2.5)) == rel(2.9154759474226504, 1e-14));
    CHECK(magnitude(Complex(-3.0, 0.0)) == 3.0);
    CHECK(magnitude(Complex(0.0, 0.0)) == 0.0);
    CHECK(magnitude(Complex(0.0, 4.0)) == 4.0);
}

TEST_CASE("log-spaced grid hits endpoints exactly with a constant ratio") {
    const FrequencyGrid g = FrequencyGrid::log_spaced(1e6, 5e8, 51);
    REQUIRE(g.size() == 51);
    CHECK(g.f_hz.front() == 1e6);
    CHECK(g.f_hz.back() == 5e8);
    const double r0 = g.f_hz[1] / g.f_hz[0];
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
        CHECK(g.f_hz[i + 1] / g.f_hz[i] == rel(r0, 1e-9));
    // Midpoint of an odd log grid is the geometric mean of the endpoints.
    CHECK(g.f_hz[25] == rel(2.2360679774997896e7, 1e-12));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.f_hz[i] > g.f_hz[i - 1]);
}

TEST_CASE("log-spaced grid rejects degenerate parameters") {
    CHECK_THROWS_AS(FrequencyGrid::log_spaced(1e6, 5e8, 1), DomainError);
    CHECK_THROWS_AS(FrequencyGrid::log_spaced(0.0, 5e8, 11), DomainError);
    CHECK_THROWS_AS(FrequencyGrid::log_spaced(-1e6, 5e8, 11), DomainError);
    CHECK_THROWS_AS(FrequencyGrid::log_spaced(5e8, 5e8, 11), DomainError);
    CHECK_THROWS_AS(FrequencyGrid::log_spaced(6e8, 5e8, 11), DomainError);
}

TEST_CASE("linear grid hits endpoints exactly with constant spacing") {
    const FrequencyGrid g = FrequencyGrid::linear(1e6, 2e6, 11);
    REQUIRE(g.size() == 11);
    CHECK(g.f_hz.front() == 1e6);
    CHECK(g.f_hz.back() == 2e6);
    const double d0 = g.f_hz[1] - g.f_hz[0];
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
        CHECK(g.f_hz[i + 1] - g.f_hz[i] == rel(d0, 1e-9));
    CHECK_THROWS_AS(FrequencyGrid::linear(1e6, 2e6, 1), DomainError);
    CHECK_THROWS_AS(FrequencyGrid::linear(2e6, 1e6, 5), DomainError);
}

TEST_CASE("default grid matches the sweep instrument") {
    const FrequencyGrid g = default_grid();
    REQUIRE(g.size() == 51);
    CHECK(g.f_hz.front() == 1e6);
    CHECK(g.f_hz.back() == 5e8);
    int in_band = 0;
    for (double f : g.f_hz)
        if (f >= 80e6 && f <= 180e6) ++in_band;
    CHECK(in_band == 6);
}

TEST_CASE("noise config validation") {
    NoiseConfig n;
    CHECK_NOTHROW(n.validate());

    SUBCASE("negative spreads are rejected") {
        NoiseConfig bad = n;
        bad.force_sd_n = -0.01;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad = n;
        bad.contact_radius_jitter = -0.1;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad = n;
        bad.s11_noise_db = -0.5;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad = n;
        bad.mag_noise_t = -1e-9;
        CHECK_THROWS_AS(bad.validate(), DomainError);
    }
    SUBCASE("distance interval must be ordered and positive") {
        NoiseConfig bad = n;
        bad.contact_distance_lo_m = 4e-3;
        bad.contact_distance_hi_m = 3e-3;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad = n;
        bad.contact_distance_lo_m = 0.0;
        CHECK_THROWS_AS(bad.validate(), DomainError);
    }
}

TEST_CASE("zero noise config disables every component") {
    const NoiseConfig z = NoiseConfig::zero();
    CHECK(z.force_sd_n == 0.0);
    CHECK(z.contact_radius_jitter == 0.0);
    CHECK(z.s11_noise_db == 0.0);
    CHECK(z.contact_distance_lo_m == 2.5e-3);
    CHECK(z.contact_distance_hi_m == 2.5e-3);
    CHECK(z.mag_noise_t == 0.0);
    CHECK(std::isinf(z.audio_snr_db));
    CHECK_NOTHROW(z.validate());
    // Mean force survives zeroing; only the spreads collapse.
    CHECK(z.force_mean_n == NoiseConfig{}.force_mean_n);
}

TEST_CASE("pessimistic distance config widens only the standoff") {
    const NoiseConfig p = NoiseConfig::pessimistic_distance();
    const NoiseConfig d;
    CHECK(p.contact_distance_lo_m == d.contact_distance_lo_m);
    CHECK(p.contact_distance_hi_m == 10e-3);
    CHECK(p.s11_noise_db == d.s11_noise_db);
    CHECK(p.mag_noise_t == d.mag_noise_t);
    CHECK_NOTHROW(p.validate());
}

} // TEST_SUITE
