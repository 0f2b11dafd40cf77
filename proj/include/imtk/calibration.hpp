#pragma once

#include <string>
#include <utility>
#include <vector>

namespace imtk {

enum class PropertyKind { conductivity_s_per_m, remanence_t };

std::string to_string(PropertyKind k);

/// Measured characterization curve: filler weight fraction against the
/// resulting material property. Fractions are decimals (0.05 = 5 wt%),
/// strictly increasing within [0, 0.28]; values are positive SI quantities.
struct CalibrationTable {
    struct Point {
        double weight_fraction;
        double value;
    };
    std::vector<Point> points;
    PropertyKind kind = PropertyKind::conductivity_s_per_m;

    /// Throws DomainError when fractions are out of range or not strictly
    /// increasing, values are nonpositive, or fewer than 2 points exist.
    void validate() const;
};

/// Parse a CSV file with header "weight_fraction,value".
/// Throws ParseError (with 1-based line number) for malformed rows,
/// non-monotone fractions, nonpositive values or an empty file.
CalibrationTable load_table(const std::string& path, PropertyKind kind);

/// Same parser over in-memory text (used by load_table and tests).
CalibrationTable parse_table(const std::string& csv_text, PropertyKind kind);

/// Property at a fraction via log-linear interpolation: linear in
/// (fraction, log10 value). Exact at the knots.
/// Throws DomainError when the fraction lies outside the table range.
double property_for_fraction(const CalibrationTable& table, double fraction);

/// Inverse of property_for_fraction on a monotone table. Round-trips within
/// 1e-9 relative in log space.
/// Throws UnreachableError (carrying the nearest achievable value) when the
/// target lies outside the table's value range, DomainError when the table
/// is not strictly monotone in value.
double fraction_for_property(const CalibrationTable& table, double target_value);

/// Adjacent-point interval with the steepest rise of log10(value) per unit
/// fraction; this is where the composite first forms a conductive network.
/// Ties keep the first interval. Requires >= 3 points.
/// has_threshold is false when all values are equal (no rise anywhere).
struct PercolationResult {
    bool has_threshold;
    double fraction_lo;
    double fraction_hi;
};
PercolationResult percolation_threshold(const CalibrationTable& table);

} // namespace imtk
