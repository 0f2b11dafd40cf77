#include "imtk/contact.hpp"

#include <cmath>

#include "imtk/core.hpp"
#include "imtk/errors.hpp"

namespace imtk {

void FingerModel::validate() const {
    if (!(poisson >= 0.0 && poisson < 0.5))
        throw DomainError("poisson ratio must lie in [0, 0.5)");
    if (!(youngs_modulus_lo_pa > 0.0) || !(youngs_modulus_hi_pa >= youngs_modulus_lo_pa))
        throw DomainError("modulus interval must satisfy 0 < lo <= hi");
    if (!(curvature_radius_m > 0.0)) throw DomainError("curvature radius must be positive");
    if (!(tap_force_mean_n > 0.0)) throw DomainError("tap force mean must be positive");
    if (tap_force_sd_n < 0.0) throw DomainError("tap force sd must be nonnegative");
    if (!(skin_resistivity_ohm_m > 0.0)) throw DomainError("skin resistivity must be positive");
}

double FingerModel::nominal_modulus_pa() const {
    return std::sqrt(youngs_modulus_lo_pa * youngs_modulus_hi_pa);
}

double effective_modulus(const FingerModel& finger, double modulus_pa) {
    finger.validate();
    if (modulus_pa < finger.youngs_modulus_lo_pa || modulus_pa > finger.youngs_modulus_hi_pa)
        throw DomainError("modulus outside the finger's interval");
    return 4.0 * modulus_pa / (3.0 * (1.0 - finger.poisson * finger.poisson));
}

ContactGeometry contact_radius(double force_n, const FingerModel& finger, double modulus_pa) {
    if (force_n < 0.0) throw DomainError("contact force must be nonnegative");
    effective_modulus(finger, modulus_pa); // validates finger and modulus range
    const double nu2 = finger.poisson * finger.poisson;
    const double a = std::cbrt(9.0 * force_n * finger.curvature_radius_m * (1.0 - nu2) /
                               (16.0 * modulus_pa));
    return ContactGeometry{a, constants::pi * a * a};
}

std::pair<double, double> contact_radius_bounds(const FingerModel& finger) {
    finger.validate();
    // Radius is decreasing in modulus, so the stiff bound gives the minimum.
    const double a_lo = contact_radius(finger.tap_force_mean_n, finger, finger.youngs_modulus_hi_pa).radius_m;
    const double a_hi = contact_radius(finger.tap_force_mean_n, finger, finger.youngs_modulus_lo_pa).radius_m;
    return {a_lo, a_hi};
}

double spreading_impedance(double rho1_ohm_m, double rho2_ohm_m, double a_m,
                           double mean_free_path_m) {
    if (!(a_m > 0.0)) throw DomainError("contact radius must be positive");
    if (rho1_ohm_m < 0.0 || rho2_ohm_m < 0.0) throw DomainError("resistivity must be nonnegative");
    if (mean_free_path_m < 0.0) throw DomainError("mean free path must be nonnegative");
    const double rho_star = 0.5 * (rho1_ohm_m + rho2_ohm_m);
    double z = rho_star / (2.0 * a_m);
    // Ballistic correction only outside the diffuse regime; the interpolation
    // function is pinned at its diffuse limit of 1.
    if (mean_free_path_m / a_m > 1e-3)
        z += 4.0 * rho_star * mean_free_path_m / (3.0 * constants::pi * a_m * a_m);
    return z;
}

} // namespace imtk
