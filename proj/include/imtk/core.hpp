#pragma once

#include <complex>
#include <vector>

namespace imtk {

/// Complex quantity; carriers interpret the unit (ohms for impedances).
using Complex = std::complex<double>;

/// |z| = sqrt(re^2 + im^2).
inline double magnitude(Complex z) { return std::abs(z); }

/// Fixed physical constants used by the channel models.
namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
/// Vacuum permeability, N/A^2.
inline constexpr double mu0 = 4.0 * pi * 1e-7;
/// Vacuum permittivity, F/m.
inline constexpr double eps0 = 8.854187817e-12;
/// Bohr magneton, A*m^2.
inline constexpr double bohr_magneton = 9.27e-24;
/// Avogadro constant, 1/mol.
inline constexpr double avogadro = 6.02e23;
/// Earth's magnetic field at the surface, T. Floor of the magnetic ladder.
inline constexpr double earth_field_t = 5e-5;
/// Fridge-magnet field strength, T. Ceiling of the magnetic ladder.
inline constexpr double fridge_field_t = 1e-2;
/// Characterized finger (skin) resistivity, ohm*m.
inline constexpr double finger_resistivity_ohm_m = 11.0;
/// Reference impedance of the reflection conversion, ohm.
inline constexpr double z0_ohm = 50.0;
/// Fixed series body-path offset used by sweep synthesis, ohm.
inline constexpr double z_bio_ohm = 600.0;
/// Floor applied to reflection magnitudes in dB (perfect match clamps here).
inline constexpr double s11_floor_db = -120.0;
/// Sweep rate of the reflection instrument, frames per second.
inline constexpr double sweep_rate_hz = 30.0;
/// Magnetometer sampling rate, Hz.
inline constexpr double magnetometer_rate_hz = 10.0;
} // namespace constants

/// Ordered frequency sample points for sweep synthesis and decoding.
struct FrequencyGrid {
    std::vector<double> f_hz;

    std::size_t size() const { return f_hz.size(); }

    /// n points log-spaced on [lo, hi], endpoints exact.
    /// Throws DomainError when n < 2, lo <= 0 or hi <= lo.
    static FrequencyGrid log_spaced(double lo_hz, double hi_hz, int n);

    /// n points linearly spaced on [lo, hi], endpoints exact.
    static FrequencyGrid linear(double lo_hz, double hi_hz, int n);
};

/// 51 log-spaced points on [1 MHz, 500 MHz], matching the sweep instrument.
FrequencyGrid default_grid();

} // namespace imtk
