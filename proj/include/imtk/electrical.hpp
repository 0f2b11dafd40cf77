#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "imtk/contact.hpp"
#include "imtk/core.hpp"
#include "imtk/noise.hpp"

namespace imtk {

/// Geometry and electrical properties of one encodable surface element.
struct MaterialPixel {
    double length_m = 0.015;
    double width_m = 0.015;
    double thickness_m = 0.001;
    double resistivity_ohm_m = 1.86e8;
    double relative_permittivity = 1.0;

    double face_area_m2() const { return length_m * width_m; }

    /// Throws DomainError for nonpositive dimensions or resistivity, or when
    /// the thickness exceeds the face edge (thin-pixel regime violated).
    void validate() const;
};

/// Geometric conductivity ladder: state k has sigma_k = sigma0 * ratio^k.
struct ElectricalLadder {
    double sigma0_s_per_m = 5.37e-9;
    double ratio = 1.68;
    int n_states = 32;

    std::vector<double> conductivities() const;
    std::vector<double> resistivities() const;

    void validate() const;
};

/// One reflection sweep: S11 magnitude in dB per grid frequency.
struct SweepFrame {
    double timestamp_s = 0.0;
    FrequencyGrid grid;
    std::vector<double> s11_db;
};

/// Finger-to-pixel contact impedance (11 + rho_material) / (4a), a special
/// case of spreading_impedance with the characterized skin resistivity on
/// one side. Throws DomainError for nonpositive inputs.
double contact_impedance(double rho_material_ohm_m, double a_m);

/// Bulk pixel impedance with complex permittivity:
///   Z = (t/A) * (1/sigma + omega / (j omega^2 eps0 eps_r - sigma)),
/// sigma = 1/rho, omega = 2 pi f. Real part is positive for any passive
/// pixel. Throws DomainError for f <= 0.
Complex material_impedance(const MaterialPixel& pixel, double f_hz);

/// Touch-induced impedance change. include_material=false keeps only the
/// contact term (the decoding model, purely real and frequency independent);
/// true adds the bulk term. The model is only claimed above 1 MHz, lower
/// frequencies throw DomainError.
Complex delta_z(const MaterialPixel& pixel, double a_m, double f_hz, bool include_material);

/// 20 log10 |(Z - Z0)/(Z + Z0)|, clamped below at -120 dB. Passive loads
/// (re >= 0) give values <= 0. Throws DomainError for z0 <= 0 or Z = -Z0.
double s11_db(Complex z_total, double z0_ohm = constants::z0_ohm);

/// Synthesize one sweep frame for a touched pixel:
/// draws a tap force (truncated Gaussian) and a contact-radius jitter factor,
/// evaluates the full-model delta-Z plus the fixed series body offset per
/// grid point, applies the dB-denominated trace noise to the contact-path
/// impedance magnitude, and converts to S11 at Z0 = 50 ohm.
/// Deterministic for a given seed.
SweepFrame synth_sweep(const MaterialPixel& pixel, const FingerModel& finger,
                       const NoiseConfig& noise, std::uint64_t rng_seed,
                       const FrequencyGrid& grid = default_grid(),
                       double timestamp_s = 0.0);

/// n frames at the instrument's 30 Hz frame rate, one derived seed per frame.
std::vector<SweepFrame> synth_sweep_frames(const MaterialPixel& pixel, const FingerModel& finger,
                                           const NoiseConfig& noise, int n_frames,
                                           std::uint64_t rng_seed,
                                           const FrequencyGrid& grid = default_grid());

/// Mean of s11_db over grid points with f in [80, 180] MHz, the decoder's
/// frame statistic. Throws DomainError when the grid has no point in band.
double band_mean_s11_db(const SweepFrame& frame);

/// Noiseless frame statistic for a pixel at the nominal contact (mean force,
/// nominal modulus, no jitter). Planning and zero-noise synthesis share this
/// exact code path, which is what makes noiseless round trips exact.
double noiseless_band_stat_db(const MaterialPixel& pixel, const FingerModel& finger,
                              const FrequencyGrid& grid = default_grid());

/// Distinguishable-state count between two resistivity bounds at a given
/// multiplicative read margin: states = floor(log(hi/lo)/log(margin)),
/// clamped to >= 1; bits = floor(log2(states)).
/// Throws DomainError unless hi > lo > 0 and margin > 1.
std::pair<int, int> electrical_capacity(double rho_hi_ohm_m, double rho_lo_ohm_m, double margin);

/// State table (index, conductivity, resistivity) for a ladder.
struct LadderState {
    int state;
    double sigma_s_per_m;
    double rho_ohm_m;
};
std::vector<LadderState> ladder_states(const ElectricalLadder& ladder);

} // namespace imtk
