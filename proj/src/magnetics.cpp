#include "imtk/magnetics.hpp"

#include <algorithm>
#include <cmath>

#include "imtk/core.hpp"
#include "imtk/errors.hpp"
#include "imtk/rng.hpp"

namespace imtk {

void MagnetPixel::validate() const {
    if (!(length_m > 0.0) || !(width_m > 0.0) || !(thickness_m > 0.0))
        throw DomainError("magnet dimensions must be positive");
    if (remanence_t < 0.0) throw DomainError("remanence must be non-negative");
}

void MagneticComposition::validate() const {
    // n_B = 0 is allowed as the degenerate no-magnetic-phase composition;
    // any other value must sit in the physical window for the filler.
    const bool in_window = bohr_magnetons_per_atom >= 4.0 && bohr_magnetons_per_atom <= 6.7;
    if (!in_window && bohr_magnetons_per_atom != 0.0)
        throw DomainError("bohr magnetons per formula unit outside [4, 6.7]");
    if (!(partial_density_g_per_m3 > 0.0)) throw DomainError("partial density must be positive");
    if (!(molar_mass_g_per_mol > 0.0)) throw DomainError("molar mass must be positive");
}

void MagneticLadder::validate() const {
    if (!(b_lo_t > 0.0)) throw DomainError("ladder base reading must be positive");
    if (!(ratio > 1.0)) throw DomainError("ladder ratio must exceed 1");
    if (n_states < 1) throw DomainError("ladder needs at least 1 state");
}

std::vector<double> MagneticLadder::readings() const {
    validate();
    std::vector<double> r(static_cast<std::size_t>(n_states));
    for (int k = 0; k < n_states; ++k)
        r[static_cast<std::size_t>(k)] = b_lo_t * std::pow(ratio, k);
    return r;
}

double saturation_magnetization(const MagneticComposition& c) {
    c.validate();
    return c.bohr_magnetons_per_atom * constants::bohr_magneton * c.partial_density_g_per_m3 *
           constants::avogadro / c.molar_mass_g_per_mol;
}

double saturation_induction(double m_sat_a_per_m) {
    if (m_sat_a_per_m < 0.0) throw DomainError("magnetization must be non-negative");
    return constants::mu0 * m_sat_a_per_m;
}

namespace {

double face_term(double lw, double d, double l2w2) {
    return std::atan(lw / (2.0 * d * std::sqrt(4.0 * d * d + l2w2)));
}

} // namespace

double flux_density(const MagnetPixel& pixel, double x_m) {
    pixel.validate();
    if (!(x_m > 0.0)) throw DomainError("on-axis distance must be positive");
    const double lw = pixel.length_m * pixel.width_m;
    const double l2w2 = pixel.length_m * pixel.length_m + pixel.width_m * pixel.width_m;
    const double top = face_term(lw, x_m, l2w2);
    const double bottom = face_term(lw, x_m + pixel.thickness_m, l2w2);
    return pixel.remanence_t / constants::pi * (top - bottom);
}

double flux_density_reference(const MagnetPixel& pixel, double x_m, int grid_n) {
    pixel.validate();
    if (!(x_m > 0.0)) throw DomainError("on-axis distance must be positive");
    if (grid_n < 64) throw DomainError("quadrature grid must be at least 64 per side");

    // Surface-charge model: the uniformly magnetized cuboid is replaced by a
    // +B_r charged rectangle on the top face and a -B_r one on the bottom
    // face. The axial field of a charged rectangle at height d is
    // (B_r / 4pi) * integral d / r^3 over the face, done here with an N x N
    // midpoint rule.
    const double hx = pixel.length_m / grid_n;
    const double hy = pixel.width_m / grid_n;
    const double cell = hx * hy;

    auto face_field = [&](double d) {
        double acc = 0.0;
        for (int i = 0; i < grid_n; ++i) {
            const double px = -0.5 * pixel.length_m + (i + 0.5) * hx;
            for (int j = 0; j < grid_n; ++j) {
                const double py = -0.5 * pixel.width_m + (j + 0.5) * hy;
                const double r2 = px * px + py * py + d * d;
                acc += d / (r2 * std::sqrt(r2));
            }
        }
        return acc * cell;
    };

    const double top = face_field(x_m);
    const double bottom = face_field(x_m + pixel.thickness_m);
    return pixel.remanence_t / (4.0 * constants::pi) * (top - bottom);
}

std::pair<int, int> magnetic_capacity(double b_hi_t, double b_lo_t, double margin) {
    if (!(b_lo_t > 0.0) || !(b_hi_t > b_lo_t))
        throw DomainError("capacity bounds must satisfy hi > lo > 0");
    if (!(margin > 1.0)) throw DomainError("read margin must exceed 1");
    int states = static_cast<int>(std::floor(std::log(b_hi_t / b_lo_t) / std::log(margin)));
    if (states < 1) states = 1;
    const int bits = static_cast<int>(std::floor(std::log2(static_cast<double>(states))));
    return {states, bits};
}

double remanence_for_reading(double reading_t, const MagnetPixel& pixel,
                             double nominal_distance_m) {
    if (!(reading_t > 0.0)) throw DomainError("target reading must be positive");
    MagnetPixel unit = pixel;
    unit.remanence_t = 1.0;
    const double profile = flux_density(unit, nominal_distance_m);
    return reading_t / profile;
}

namespace {

/// Approach profile for a touch: starts at 0.3 m, settles at the contact
/// distance by t = 0.8 s via a smoothstep, stays in contact afterwards.
double standoff_at(double t_s, double contact_distance_m) {
    constexpr double far_m = 0.3;
    constexpr double settle_s = 0.8;
    if (t_s >= settle_s) return contact_distance_m;
    const double s = t_s / settle_s;
    const double smooth = s * s * (3.0 - 2.0 * s);
    return far_m + (contact_distance_m - far_m) * smooth;
}

} // namespace

std::vector<MagSample> synth_magnetometer_trace(double state_b_r_t, const MagnetPixel& pixel,
                                                double contact_distance_m, double duration_s,
                                                const NoiseConfig& noise, std::uint64_t rng_seed) {
    if (duration_s < 1.0) throw DomainError("trace must cover at least 1 s");
    if (!(contact_distance_m > 0.0)) throw DomainError("contact distance must be positive");
    if (state_b_r_t < 0.0) throw DomainError("remanence must be non-negative");
    noise.validate();

    MagnetPixel magnet = pixel;
    magnet.remanence_t = state_b_r_t;
    magnet.validate();

    RandomStream rng(rng_seed);
    const std::array<double, 3> earth = rng.unit_vector();

    const double rate = constants::magnetometer_rate_hz;
    const int n = static_cast<int>(std::floor(duration_s * rate)) + 1;
    std::vector<MagSample> trace;
    trace.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        MagSample s;
        s.t_s = i / rate;
        const double axial =
            state_b_r_t > 0.0 ? flux_density(magnet, standoff_at(s.t_s, contact_distance_m)) : 0.0;
        for (int ax = 0; ax < 3; ++ax)
            s.b_t[static_cast<std::size_t>(ax)] =
                constants::earth_field_t * earth[static_cast<std::size_t>(ax)] +
                rng.normal(0.0, noise.mag_noise_t);
        s.b_t[2] += axial;
        trace.push_back(s);
    }
    return trace;
}

double peak_excess(const std::vector<MagSample>& trace) {
    if (trace.size() < 10) throw DomainError("trace too short: need at least 10 samples");

    // Baseline is the per-axis median of the first 5 samples, taken before
    // the approach profile reaches the pixel. Subtracting it as a vector
    // makes the statistic exactly invariant under any constant field offset.
    std::array<double, 3> baseline{};
    for (int ax = 0; ax < 3; ++ax) {
        std::array<double, 5> v;
        for (std::size_t i = 0; i < 5; ++i) v[i] = trace[i].b_t[static_cast<std::size_t>(ax)];
        std::nth_element(v.begin(), v.begin() + 2, v.end());
        baseline[static_cast<std::size_t>(ax)] = v[2];
    }

    double peak = 0.0;
    for (const MagSample& s : trace) {
        const double dx = s.b_t[0] - baseline[0];
        const double dy = s.b_t[1] - baseline[1];
        const double dz = s.b_t[2] - baseline[2];
        peak = std::max(peak, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    return peak;
}

} // namespace imtk
