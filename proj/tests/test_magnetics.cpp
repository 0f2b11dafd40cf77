#include "doctest.h"

#include <cmath>
#include <vector>

#include "imtk/core.hpp"
#include "imtk/errors.hpp"
#include "imtk/magnetics.hpp"

#include "helpers.hpp"

using namespace imtk;
using testutil::rel;

TEST_SUITE("magnetics") {

TEST_CASE("saturation magnetization of the composite") {
    MagneticComposition c;
    const double m = saturation_magnetization(c);
    CHECK(m == rel(99302.58235327144, 1e-12));
    CHECK(std::abs(m - 0.997e5) <= 0.01 * 0.997e5);

    SUBCASE("no magnetic phase, no magnetization") {
        MagneticComposition empty = c;
        empty.bohr_magnetons_per_atom = 0.0;
        CHECK(saturation_magnetization(empty) == 0.0);
    }
    SUBCASE("linear in the moment per formula unit") {
        MagneticComposition strong = c;
        strong.bohr_magnetons_per_atom = 6.7;
        CHECK(saturation_magnetization(strong) == rel(m * 6.7 / 4.0, 1e-12));
    }
    SUBCASE("linear in partial density, inverse in molar mass") {
        MagneticComposition dense = c;
        dense.partial_density_g_per_m3 *= 3.0;
        CHECK(saturation_magnetization(dense) == rel(3.0 * m, 1e-12));
        MagneticComposition heavy = c;
        heavy.molar_mass_g_per_mol *= 2.0;
        CHECK(saturation_magnetization(heavy) == rel(m / 2.0, 1e-12));
    }
    SUBCASE("moment outside the physical window is rejected") {
        MagneticComposition bad = c;
        bad.bohr_magnetons_per_atom = 3.0;
        CHECK_THROWS_AS(saturation_magnetization(bad), DomainError);
        bad.bohr_magnetons_per_atom = 7.0;
        CHECK_THROWS_AS(saturation_magnetization(bad), DomainError);
        bad = c;
        bad.partial_density_g_per_m3 = 0.0;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad = c;
        bad.molar_mass_g_per_mol = -1.0;
        CHECK_THROWS_AS(bad.validate(), DomainError);
    }
}

TEST_CASE("saturation induction") {
    CHECK(saturation_induction(0.0) == 0.0);
    CHECK(saturation_induction(1.0 / constants::mu0) == rel(1.0, 1e-12));
    const double b = saturation_induction(saturation_magnetization(MagneticComposition{}));
    CHECK(b == rel(0.1247873052814132, 1e-12));
    CHECK(std::abs(b - 0.125) <= 0.01 * 0.125);
    CHECK_THROWS_AS(saturation_induction(-1.0), DomainError);
}

TEST_CASE("on-axis flux density of the magnet pixel") {
    MagnetPixel p;
    p.remanence_t = 0.125;

    SUBCASE("pinned values at the nominal standoff") {
        CHECK(flux_density(p, 2.5e-3) == rel(0.125 * 0.1692125428044456, 1e-12));
        CHECK(flux_density(p, 2.5e-3) == rel(0.1691 * p.remanence_t, 1e-3));
        CHECK(flux_density(p, 10e-3) / flux_density(p, 2.5e-3) ==
              rel(0.39660137417196867, 1e-12));
        CHECK(flux_density(p, 10e-3) / flux_density(p, 2.5e-3) == rel(0.397, 2e-3));
    }
    SUBCASE("field vanishes far away") {
        CHECK(flux_density(p, 100.0) < 1e-11 * p.remanence_t);
        CHECK(flux_density(p, 100.0) > 0.0);
    }
    SUBCASE("strictly decreasing and bounded by (0, B_r)") {
        double prev = p.remanence_t;
        for (int i = 0; i < 50; ++i) {
            const double x = 1e-4 * std::pow(10.0, 4.0 * i / 49.0); // 0.1 mm .. 1 m
            const double b = flux_density(p, x);
            CHECK(b > 0.0);
            CHECK(b < prev);
            prev = b;
        }
    }
    SUBCASE("wide-sheet limit decays with the face edge") {
        // For L = W >> (X, t) the on-axis field approaches
        // 2*sqrt(2)*t*B_r/(pi*L): ~4.5e-6 B_r at L = 1 km, ten times less
        // at L = 10 km.
        MagnetPixel sheet = p;
        sheet.length_m = sheet.width_m = 1e3;
        CHECK(flux_density(sheet, 2.5e-3) < 1e-5 * p.remanence_t);
        sheet.length_m = sheet.width_m = 1e4;
        CHECK(flux_density(sheet, 2.5e-3) < 1e-6 * p.remanence_t);
    }
    SUBCASE("zero remanence gives zero field") {
        MagnetPixel z = p;
        z.remanence_t = 0.0;
        CHECK(flux_density(z, 2.5e-3) == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(flux_density(p, 0.0), DomainError);
        CHECK_THROWS_AS(flux_density(p, -1e-3), DomainError);
        MagnetPixel bad = p;
        bad.remanence_t = -0.1;
        CHECK_THROWS_AS(flux_density(bad, 2.5e-3), DomainError);
        bad = p;
        bad.thickness_m = 0.0;
        CHECK_THROWS_AS(flux_density(bad, 2.5e-3), DomainError);
    }
}

TEST_CASE("surface-charge reference model agrees with the closed form") {
    MagnetPixel p;
    p.remanence_t = 0.125;

    SUBCASE("relative agreement at grid 512 over the working standoffs") {
        for (double x : {1e-3, 2.5e-3, 5e-3, 10e-3, 25e-3, 50e-3}) {
            const double exact = flux_density(p, x);
            const double ref = flux_density_reference(p, x, 512);
            CHECK(std::abs(ref - exact) / exact <= 1e-4);
        }
    }
    SUBCASE("midpoint rule converges with refinement") {
        const double exact = flux_density(p, 2.5e-3);
        const double e256 = std::abs(flux_density_reference(p, 2.5e-3, 256) - exact) / exact;
        const double e512 = std::abs(flux_density_reference(p, 2.5e-3, 512) - exact) / exact;
        CHECK(e256 < 1e-5);
        CHECK(e512 < e256);
    }
    SUBCASE("linear in remanence through zero") {
        MagnetPixel two = p;
        two.remanence_t = 0.25;
        CHECK(flux_density_reference(two, 5e-3, 128) ==
              rel(2.0 * flux_density_reference(p, 5e-3, 128), 1e-12));
        MagnetPixel zero = p;
        zero.remanence_t = 0.0;
        CHECK(flux_density_reference(zero, 5e-3, 128) == 0.0);
    }
    SUBCASE("grid floor") {
        CHECK_NOTHROW(flux_density_reference(p, 2.5e-3, 64));
        CHECK_THROWS_AS(flux_density_reference(p, 2.5e-3, 63), DomainError);
    }
}

TEST_CASE("magnetic capacity") {
    CHECK(magnetic_capacity(1e-2, 5e-5, 1.81) == std::pair<int, int>(8, 3));
    CHECK(magnetic_capacity(5e-5 * 1.81, 5e-5, 1.81) == std::pair<int, int>(1, 0));
    CHECK(magnetic_capacity(1e-2, 5e-5, 2.0) == std::pair<int, int>(7, 2));
    CHECK_THROWS_AS(magnetic_capacity(5e-5, 5e-5, 1.81), DomainError);
    CHECK_THROWS_AS(magnetic_capacity(1e-2, 0.0, 1.81), DomainError);
    CHECK_THROWS_AS(magnetic_capacity(1e-2, 5e-5, 1.0), DomainError);
}

TEST_CASE("reading ladder") {
    const MagneticLadder l;
    const std::vector<double> r = l.readings();
    REQUIRE(r.size() == 8);
    CHECK(r[0] == 5e-5);
    for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] / r[k - 1] == rel(1.81, 1e-12));
    CHECK(r[7] == rel(0.0031821454636008313, 1e-12));
    CHECK(r[7] <= 1e-2);

    MagneticLadder bad;
    bad.b_lo_t = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = MagneticLadder{};
    bad.ratio = 1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = MagneticLadder{};
    bad.n_states = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("remanence needed for a target reading") {
    MagnetPixel p;
    CHECK(remanence_for_reading(5e-5, p) == rel(0.0002954863698123352, 1e-12));
    CHECK(remanence_for_reading(0.0031821454636008313, p) == rel(0.018805612225084, 1e-11));

    SUBCASE("round trip through the flux profile") {
        for (double reading : {5e-5, 3e-4, 1e-3, 9e-3}) {
            MagnetPixel m = p;
            m.remanence_t = remanence_for_reading(reading, p);
            CHECK(flux_density(m, 2.5e-3) == rel(reading, 1e-12));
        }
    }
    SUBCASE("custom standoff") {
        MagnetPixel m = p;
        m.remanence_t = remanence_for_reading(1e-4, p, 5e-3);
        CHECK(flux_density(m, 5e-3) == rel(1e-4, 1e-12));
    }
    CHECK_THROWS_AS(remanence_for_reading(0.0, p), DomainError);
    CHECK_THROWS_AS(remanence_for_reading(-1e-5, p), DomainError);
}

TEST_CASE("magnetometer trace synthesis") {
    MagnetPixel p;
    const NoiseConfig zero = NoiseConfig::zero();

    SUBCASE("no pixel leaves only the Earth field") {
        const auto trace = synth_magnetometer_trace(0.0, p, 2.5e-3, 1.5, zero, 5);
        REQUIRE(trace.size() == 16);
        for (const MagSample& s : trace) {
            const double m =
                std::sqrt(s.b_t[0] * s.b_t[0] + s.b_t[1] * s.b_t[1] + s.b_t[2] * s.b_t[2]);
            CHECK(m == rel(constants::earth_field_t, 1e-12));
        }
    }
    SUBCASE("sampling runs at 10 Hz with floor(duration*rate)+1 samples") {
        const auto trace = synth_magnetometer_trace(0.0, p, 2.5e-3, 1.5, zero, 5);
        REQUIRE(trace.size() == 16);
        for (std::size_t i = 0; i < trace.size(); ++i)
            CHECK(trace[i].t_s == static_cast<double>(i) / 10.0);
        CHECK(synth_magnetometer_trace(0.0, p, 2.5e-3, 2.0, zero, 5).size() == 21);
    }
    SUBCASE("same seed gives a bit-identical trace") {
        NoiseConfig noisy;
        const auto a = synth_magnetometer_trace(1e-3, p, 3e-3, 1.5, noisy, 77);
        const auto b = synth_magnetometer_trace(1e-3, p, 3e-3, 1.5, noisy, 77);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].t_s == b[i].t_s);
            CHECK(a[i].b_t == b[i].b_t);
        }
        const auto c = synth_magnetometer_trace(1e-3, p, 3e-3, 1.5, noisy, 78);
        bool any_diff = false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].b_t != c[i].b_t) any_diff = true;
        CHECK(any_diff);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(synth_magnetometer_trace(1e-3, p, 2.5e-3, 0.9, zero, 1), DomainError);
        CHECK_THROWS_AS(synth_magnetometer_trace(1e-3, p, 0.0, 1.5, zero, 1), DomainError);
        CHECK_THROWS_AS(synth_magnetometer_trace(-1e-3, p, 2.5e-3, 1.5, zero, 1), DomainError);
    }
}

TEST_CASE("noiseless ladder traces keep the design read margin") {
    MagnetPixel p;
    const NoiseConfig zero = NoiseConfig::zero();
    const std::vector<double> readings = MagneticLadder{}.readings();
    std::vector<double> excess;
    for (double r : readings) {
        const double br = remanence_for_reading(r, p);
        const auto trace = synth_magnetometer_trace(br, p, 2.5e-3, 1.5, zero, 31);
        excess.push_back(peak_excess(trace));
    }
    for (std::size_t k = 1; k < excess.size(); ++k) {
        CHECK(excess[k] > excess[k - 1]);
        CHECK(excess[k] / excess[k - 1] == rel(1.81, 1e-9));
    }
}

TEST_CASE("peak excess statistic") {
    MagnetPixel p;
    const NoiseConfig zero = NoiseConfig::zero();
    const double br = remanence_for_reading(1e-3, p);
    const auto trace = synth_magnetometer_trace(br, p, 2.5e-3, 1.5, zero, 13);
    const double base = peak_excess(trace);
    CHECK(base > 0.0);

    SUBCASE("invariant under any constant field offset") {
        auto shifted = trace;
        for (MagSample& s : shifted) {
            s.b_t[0] += 1.7e-5;
            s.b_t[1] -= 2.9e-5;
            s.b_t[2] += 4.1e-5;
        }
        CHECK(peak_excess(shifted) == rel(base, 1e-9));
    }
    SUBCASE("short traces are rejected") {
        std::vector<MagSample> nine(trace.begin(), trace.begin() + 9);
        CHECK_THROWS_AS(peak_excess(nine), DomainError);
        std::vector<MagSample> ten(trace.begin(), trace.begin() + 10);
        CHECK_NOTHROW(peak_excess(ten));
    }
}

} // TEST_SUITE
