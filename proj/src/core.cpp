#include "imtk/core.hpp"

#include <cmath>

#include "imtk/errors.hpp"
#include "imtk/noise.hpp"

namespace imtk {

void NoiseConfig::validate() const {
    if (force_mean_n <= 0.0) throw DomainError("force mean must be positive");
    if (force_sd_n < 0.0) throw DomainError("force sd must be non-negative");
    if (contact_radius_jitter < 0.0 || contact_radius_jitter >= 1.0)
        throw DomainError("contact radius jitter must lie in [0, 1)");
    if (s11_noise_db < 0.0) throw DomainError("sweep noise sd must be non-negative");
    if (!(contact_distance_lo_m > 0.0) || contact_distance_hi_m < contact_distance_lo_m)
        throw DomainError("contact distance bounds must be positive and ordered");
    if (mag_noise_t < 0.0) throw DomainError("magnetometer noise sd must be non-negative");
    if (std::isnan(audio_snr_db)) throw DomainError("audio SNR must be a number");
}

namespace {

void check_span(double lo_hz, double hi_hz, int n) {
    if (n < 2) throw DomainError("frequency grid needs at least 2 points");
    if (lo_hz <= 0.0) throw DomainError("frequency grid lower bound must be positive");
    if (hi_hz <= lo_hz) throw DomainError("frequency grid upper bound must exceed lower bound");
}

} // namespace

FrequencyGrid FrequencyGrid::log_spaced(double lo_hz, double hi_hz, int n) {
    check_span(lo_hz, hi_hz, n);
    FrequencyGrid g;
    g.f_hz.resize(static_cast<std::size_t>(n));
    const double llo = std::log10(lo_hz);
    const double lhi = std::log10(hi_hz);
    for (int i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / (n - 1);
        g.f_hz[static_cast<std::size_t>(i)] = std::pow(10.0, llo + frac * (lhi - llo));
    }
    g.f_hz.front() = lo_hz;
    g.f_hz.back() = hi_hz;
    return g;
}

FrequencyGrid FrequencyGrid::linear(double lo_hz, double hi_hz, int n) {
    check_span(lo_hz, hi_hz, n);
    FrequencyGrid g;
    g.f_hz.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / (n - 1);
        g.f_hz[static_cast<std::size_t>(i)] = lo_hz + frac * (hi_hz - lo_hz);
    }
    g.f_hz.front() = lo_hz;
    g.f_hz.back() = hi_hz;
    return g;
}

FrequencyGrid default_grid() { return FrequencyGrid::log_spaced(1e6, 5e8, 51); }

} // namespace imtk
