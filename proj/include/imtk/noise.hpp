#pragma once

#include <limits>

namespace imtk {

/// Touch and sensor noise model shared by synthesis and the Monte Carlo
/// harness. All spreads are standard deviations or half-ranges; setting a
/// field to zero disables that component exactly (no residual draw).
struct NoiseConfig {
    /// Tap force, N: Gaussian truncated > 0.
    double force_mean_n = 0.50;
    double force_sd_n = 0.09;
    /// Multiplicative contact-radius jitter, uniform in [1-j, 1+j]. Stands in
    /// for the pitch-angle sweep of the finger (-20 to +20 degrees).
    double contact_radius_jitter = 0.15;
    /// Sweep trace noise, dB. Applied to the per-point contact-path impedance
    /// magnitude (factor 10^(N(0,sd)/20)) before the reflection conversion,
    /// so synthesized frames always stay passive. See README, noise model.
    double s11_noise_db = 0.5;
    /// Magnetometer standoff at contact, m: uniform in [lo, hi].
    double contact_distance_lo_m = 2.5e-3;
    double contact_distance_hi_m = 3.5e-3;
    /// Magnetometer noise per axis, T (Gaussian sd).
    double mag_noise_t = 2.0e-7;
    /// Additive white noise on swipe audio, dB SNR relative to the clean
    /// clip's RMS. +infinity disables it.
    double audio_snr_db = 20.0;

    /// All spreads zero, distance pinned at the nominal 2.5 mm, no audio
    /// noise. Used for noiseless round trips and threshold planning.
    static NoiseConfig zero() {
        NoiseConfig n;
        n.force_sd_n = 0.0;
        n.contact_radius_jitter = 0.0;
        n.s11_noise_db = 0.0;
        n.contact_distance_lo_m = 2.5e-3;
        n.contact_distance_hi_m = 2.5e-3;
        n.mag_noise_t = 0.0;
        n.audio_snr_db = std::numeric_limits<double>::infinity();
        return n;
    }

    /// Worst-case magnetometer placement, standoff uniform in [2.5, 10] mm.
    /// Mirrors the simulated far-placement attenuation study.
    static NoiseConfig pessimistic_distance() {
        NoiseConfig n;
        n.contact_distance_hi_m = 10.0e-3;
        return n;
    }

    /// Throws DomainError when a spread is negative or the distance bounds
    /// are unordered or nonpositive.
    void validate() const;
};

} // namespace imtk
