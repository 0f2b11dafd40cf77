#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "imtk/noise.hpp"

namespace imtk {

/// Cuboid magnet pixel, poles on the top/bottom faces.
struct MagnetPixel {
    double length_m = 0.02;
    double width_m = 0.02;
    double thickness_m = 0.005;
    /// Residual flux density, T.
    double remanence_t = 0.0;

    void validate() const;
};

/// Composition parameters of the magnetizable composite.
struct MagneticComposition {
    /// Bohr magnetons per formula unit, physical range [4, 6.7].
    double bohr_magnetons_per_atom = 4.0;
    /// Partial density of the magnetic phase in the composite, g/m^3.
    double partial_density_g_per_m3 = 1.03e6;
    /// Molar mass of the magnetic phase, g/mol.
    double molar_mass_g_per_mol = 231.533;

    void validate() const;
};

/// Geometric reading ladder: state k targets a peak reading b_lo * ratio^k.
struct MagneticLadder {
    double b_lo_t = 5e-5;
    double ratio = 1.81;
    int n_states = 8;

    std::vector<double> readings() const;

    void validate() const;
};

/// One magnetometer sample: time and the 3-axis field vector in tesla.
struct MagSample {
    double t_s;
    std::array<double, 3> b_t;
};

/// Saturation magnetization M_sat = n_B * mu_B * D * N_A / M, A/m.
double saturation_magnetization(const MagneticComposition& c);

/// Saturation induction B_sat = mu0 * M_sat, T. Throws DomainError for
/// negative magnetization.
double saturation_induction(double m_sat_a_per_m);

/// On-axis flux density above the top face center of a cuboid magnet:
///   B(X) = (B_r/pi) * [ atan(LW / (2X sqrt(4X^2+L^2+W^2)))
///                     - atan(LW / (2(t+X) sqrt(4(t+X)^2+L^2+W^2))) ].
/// Strictly decreasing in X, bounded by (0, B_r). Throws DomainError for
/// X <= 0.
double flux_density(const MagnetPixel& pixel, double x_m);

/// Independent check of flux_density via the magnetic surface-charge model:
/// the uniformly magnetized cuboid is replaced by charged rectangles
/// (+B_r on the top face, -B_r on the bottom face) and the on-axis field is
/// integrated with an N x N midpoint rule per face. Converges to
/// flux_density as grid_n grows. Throws DomainError for grid_n < 64.
double flux_density_reference(const MagnetPixel& pixel, double x_m, int grid_n);

/// Same contract as electrical_capacity, applied to field-reading bounds.
std::pair<int, int> magnetic_capacity(double b_hi_t, double b_lo_t, double margin);

/// Remanence needed for a ladder reading at the nominal 2.5 mm standoff.
/// States are defined in reading space, so encoding divides by the standoff
/// attenuation profile.
double remanence_for_reading(double reading_t, const MagnetPixel& pixel,
                             double nominal_distance_m = 2.5e-3);

/// Synthesize a magnetometer trace for one touch: 10 Hz 3-axis samples of a
/// constant Earth-field vector (5e-5 T, orientation drawn from the seed)
/// plus the on-axis pixel field along a standoff profile that starts far
/// away (0.3 m) and settles at contact_distance by 0.8 s, plus per-axis
/// Gaussian sensor noise. Deterministic for a given seed.
/// Throws DomainError for duration < 1 s or distance <= 0.
std::vector<MagSample> synth_magnetometer_trace(double state_b_r_t, const MagnetPixel& pixel,
                                                double contact_distance_m, double duration_s,
                                                const NoiseConfig& noise, std::uint64_t rng_seed);

/// Decoder statistic of a trace: the baseline is the per-axis median of the
/// first 5 samples and the statistic is max_t |b(t) - baseline|. Subtracting
/// the baseline as a vector makes the statistic exactly invariant under any
/// constant field offset (Earth field included).
/// Throws DomainError for traces shorter than 10 samples.
double peak_excess(const std::vector<MagSample>& trace);

} // namespace imtk
