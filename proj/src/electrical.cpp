#include "imtk/electrical.hpp"

#include <cmath>

#include "imtk/errors.hpp"
#include "imtk/rng.hpp"

namespace imtk {

void MaterialPixel::validate() const {
    if (!(length_m > 0.0) || !(width_m > 0.0) || !(thickness_m > 0.0))
        throw DomainError("pixel dimensions must be positive");
    if (thickness_m > std::min(length_m, width_m))
        throw DomainError("pixel thickness must not exceed the face edge");
    if (!(resistivity_ohm_m > 0.0)) throw DomainError("pixel resistivity must be positive");
    if (!(relative_permittivity > 0.0)) throw DomainError("relative permittivity must be positive");
}

void ElectricalLadder::validate() const {
    if (!(sigma0_s_per_m > 0.0)) throw DomainError("ladder base conductivity must be positive");
    if (!(ratio > 1.0)) throw DomainError("ladder ratio must exceed 1");
    if (n_states < 1) throw DomainError("ladder needs at least 1 state");
}

std::vector<double> ElectricalLadder::conductivities() const {
    validate();
    std::vector<double> s(static_cast<std::size_t>(n_states));
    for (int k = 0; k < n_states; ++k)
        s[static_cast<std::size_t>(k)] = sigma0_s_per_m * std::pow(ratio, k);
    return s;
}

std::vector<double> ElectricalLadder::resistivities() const {
    std::vector<double> r = conductivities();
    for (double& v : r) v = 1.0 / v;
    return r;
}

double contact_impedance(double rho_material_ohm_m, double a_m) {
    if (!(rho_material_ohm_m > 0.0)) throw DomainError("material resistivity must be positive");
    return spreading_impedance(constants::finger_resistivity_ohm_m, rho_material_ohm_m, a_m);
}

Complex material_impedance(const MaterialPixel& pixel, double f_hz) {
    pixel.validate();
    if (!(f_hz > 0.0)) throw DomainError("frequency must be positive");
    const double sigma = 1.0 / pixel.resistivity_ohm_m;
    const double omega = 2.0 * constants::pi * f_hz;
    const Complex denom(-sigma, omega * omega * constants::eps0 * pixel.relative_permittivity);
    const double t_over_a = pixel.thickness_m / pixel.face_area_m2();
    return t_over_a * (Complex(1.0 / sigma, 0.0) + omega / denom);
}

Complex delta_z(const MaterialPixel& pixel, double a_m, double f_hz, bool include_material) {
    if (f_hz < 1e6) throw DomainError("impedance model is only valid at or above 1 MHz");
    const double zc = contact_impedance(pixel.resistivity_ohm_m, a_m);
    if (!include_material) return Complex(zc, 0.0);
    return Complex(zc, 0.0) + material_impedance(pixel, f_hz);
}

double s11_db(Complex z_total, double z0_ohm) {
    if (!(z0_ohm > 0.0)) throw DomainError("reference impedance must be positive");
    const Complex denom = z_total + z0_ohm;
    if (magnitude(denom) == 0.0) throw DomainError("reflection is singular at Z = -Z0");
    const double mag = magnitude((z_total - z0_ohm) / denom);
    if (mag <= 0.0) return constants::s11_floor_db;
    const double db = 20.0 * std::log10(mag);
    return std::max(db, constants::s11_floor_db);
}

namespace {

/// Shared forward model: S11 per grid point for a touched pixel with a given
/// contact radius; `impedance_scale` multiplies the contact-path impedance
/// (1 for the noiseless path). Keeping one code path for planning and
/// synthesis makes zero-noise statistics bit-identical.
void sweep_values(const MaterialPixel& pixel, double a_m, const FrequencyGrid& grid,
                  const double* scale_per_point, std::vector<double>& out) {
    out.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Complex dz = delta_z(pixel, a_m, grid.f_hz[i], true);
        if (scale_per_point != nullptr) dz *= scale_per_point[i];
        out[i] = s11_db(dz + Complex(constants::z_bio_ohm, 0.0));
    }
}

double nominal_radius(const FingerModel& finger) {
    return contact_radius(finger.tap_force_mean_n, finger, finger.nominal_modulus_pa()).radius_m;
}

} // namespace

SweepFrame synth_sweep(const MaterialPixel& pixel, const FingerModel& finger,
                       const NoiseConfig& noise, std::uint64_t rng_seed,
                       const FrequencyGrid& grid, double timestamp_s) {
    pixel.validate();
    finger.validate();
    noise.validate();
    RandomStream rng(rng_seed);

    const double force = rng.truncated_positive_normal(noise.force_mean_n, noise.force_sd_n);
    double a = contact_radius(force, finger, finger.nominal_modulus_pa()).radius_m;
    if (noise.contact_radius_jitter > 0.0)
        a *= rng.uniform(1.0 - noise.contact_radius_jitter, 1.0 + noise.contact_radius_jitter);

    SweepFrame frame;
    frame.timestamp_s = timestamp_s;
    frame.grid = grid;
    if (noise.s11_noise_db > 0.0) {
        std::vector<double> scales(grid.size());
        for (double& s : scales)
            s = std::pow(10.0, rng.normal(0.0, noise.s11_noise_db) / 20.0);
        sweep_values(pixel, a, grid, scales.data(), frame.s11_db);
    } else {
        sweep_values(pixel, a, grid, nullptr, frame.s11_db);
    }
    return frame;
}

std::vector<SweepFrame> synth_sweep_frames(const MaterialPixel& pixel, const FingerModel& finger,
                                           const NoiseConfig& noise, int n_frames,
                                           std::uint64_t rng_seed, const FrequencyGrid& grid) {
    if (n_frames < 1) throw DomainError("frame count must be at least 1");
    std::vector<SweepFrame> frames;
    frames.reserve(static_cast<std::size_t>(n_frames));
    for (int j = 0; j < n_frames; ++j)
        frames.push_back(synth_sweep(pixel, finger, noise, derive_seed(rng_seed, static_cast<std::uint64_t>(j)),
                                     grid, j / constants::sweep_rate_hz));
    return frames;
}

double band_mean_s11_db(const SweepFrame& frame) {
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < frame.grid.size(); ++i) {
        const double f = frame.grid.f_hz[i];
        if (f >= 80e6 && f <= 180e6) {
            sum += frame.s11_db[i];
            ++n;
        }
    }
    if (n == 0) throw DomainError("grid has no point in the 80-180 MHz decode band");
    return sum / n;
}

double noiseless_band_stat_db(const MaterialPixel& pixel, const FingerModel& finger,
                              const FrequencyGrid& grid) {
    pixel.validate();
    finger.validate();
    SweepFrame frame;
    frame.grid = grid;
    sweep_values(pixel, nominal_radius(finger), grid, nullptr, frame.s11_db);
    return band_mean_s11_db(frame);
}

std::pair<int, int> electrical_capacity(double rho_hi_ohm_m, double rho_lo_ohm_m, double margin) {
    if (!(rho_lo_ohm_m > 0.0) || !(rho_hi_ohm_m > rho_lo_ohm_m))
        throw DomainError("capacity bounds must satisfy hi > lo > 0");
    if (!(margin > 1.0)) throw DomainError("read margin must exceed 1");
    int states = static_cast<int>(std::floor(std::log(rho_hi_ohm_m / rho_lo_ohm_m) / std::log(margin)));
    if (states < 1) states = 1;
    const int bits = static_cast<int>(std::floor(std::log2(static_cast<double>(states))));
    return {states, bits};
}

std::vector<LadderState> ladder_states(const ElectricalLadder& ladder) {
    const std::vector<double> sigma = ladder.conductivities();
    std::vector<LadderState> out;
    out.reserve(sigma.size());
    for (std::size_t k = 0; k < sigma.size(); ++k)
        out.push_back(LadderState{static_cast<int>(k), sigma[k], 1.0 / sigma[k]});
    return out;
}

} // namespace imtk
