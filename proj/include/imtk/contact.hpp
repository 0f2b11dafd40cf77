#pragma once

#include <utility>

namespace imtk {

/// Elastic and electrical parameters of the touching finger.
///
/// The contact model treats the finger as an elastic sphere of radius
/// curvature_radius_m pressing on a rigid plane; the material side drops out
/// of the effective modulus because skin is orders of magnitude softer.
struct FingerModel {
    double poisson = 0.48;
    /// Reported skin modulus interval, Pa. Individual evaluations pick a
    /// value inside it; the bounds drive the contact-radius envelope.
    double youngs_modulus_lo_pa = 0.2e6;
    double youngs_modulus_hi_pa = 4.6e6;
    double curvature_radius_m = 0.01;
    /// Tap force distribution, N (Gaussian, truncated positive at sampling).
    double tap_force_mean_n = 0.50;
    double tap_force_sd_n = 0.09;
    double skin_resistivity_ohm_m = 11.0;

    /// Geometric mean of the modulus interval; the single-point modulus used
    /// when synthesis needs one nominal value instead of the envelope.
    double nominal_modulus_pa() const;

    /// Throws DomainError when a field violates its physical range.
    void validate() const;
};

/// Contact spot between finger and material.
struct ContactGeometry {
    double radius_m;
    double area_m2;
};

/// Effective contact modulus E* for a soft sphere on a rigid plane:
/// 1/E* = (3/4) * (1 - nu^2)/E, i.e. E* = 4E / (3 (1 - nu^2)).
/// Throws DomainError when modulus_pa lies outside the finger's interval.
double effective_modulus(const FingerModel& finger, double modulus_pa);

/// Hertzian contact radius a = [9 F R (1 - nu^2) / (16 E)]^(1/3) and the
/// spot area pi a^2. Zero force gives a zero-size spot.
/// Throws DomainError for negative force or out-of-interval modulus.
ContactGeometry contact_radius(double force_n, const FingerModel& finger, double modulus_pa);

/// Contact radius envelope (min, max) at the mean tap force: the stiff end
/// of the modulus interval gives the small radius, the soft end the large.
std::pair<double, double> contact_radius_bounds(const FingerModel& finger);

/// Spreading (constriction) impedance of a circular contact spot of radius
/// a between bodies of resistivity rho1 and rho2, with rho* = (rho1+rho2)/2:
///
///   diffuse regime (l_e/a <= 1e-3):  Z = rho* / (2a) = (rho1+rho2)/(4a)
///   otherwise a Sharvin term 4 rho* l_e / (3 pi a^2) is added, with the
///   interpolation function fixed at its diffuse limit of 1.
///
/// Throws DomainError for a <= 0, negative resistivity or negative l_e.
double spreading_impedance(double rho1_ohm_m, double rho2_ohm_m, double a_m,
                           double mean_free_path_m = 0.0);

} // namespace imtk
