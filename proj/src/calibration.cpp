#include "imtk/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "imtk/errors.hpp"

namespace imtk {

std::string to_string(PropertyKind k) {
    return k == PropertyKind::conductivity_s_per_m ? "conductivity_s_per_m" : "remanence_t";
}

void CalibrationTable::validate() const {
    if (points.size() < 2) throw DomainError("calibration table needs at least 2 points");
    double prev = -1.0;
    for (const Point& p : points) {
        if (p.weight_fraction < 0.0 || p.weight_fraction > 0.28)
            throw DomainError("weight fraction outside [0, 0.28]");
        if (p.weight_fraction <= prev) throw DomainError("weight fractions must strictly increase");
        if (!(p.value > 0.0)) throw DomainError("property values must be positive");
        prev = p.weight_fraction;
    }
}

namespace {

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0' && std::isfinite(out);
}

std::string trimmed(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

} // namespace

CalibrationTable parse_table(const std::string& csv_text, PropertyKind kind) {
    CalibrationTable table;
    table.kind = kind;

    std::istringstream in(csv_text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = trimmed(line);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "weight_fraction,value")
                throw ParseError("expected header 'weight_fraction,value'", lineno);
            header_seen = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected exactly two comma-separated fields", lineno);
        double fraction, value;
        if (!parse_double(trimmed(line.substr(0, comma)), fraction))
            throw ParseError("non-numeric weight fraction", lineno);
        if (!parse_double(trimmed(line.substr(comma + 1)), value))
            throw ParseError("non-numeric property value", lineno);
        if (fraction < 0.0 || fraction > 0.28)
            throw ParseError("weight fraction outside [0, 0.28]", lineno);
        if (!(value > 0.0)) throw ParseError("property value must be positive", lineno);
        if (!table.points.empty() && fraction <= table.points.back().weight_fraction)
            throw ParseError("weight fractions must strictly increase", lineno);
        table.points.push_back({fraction, value});
    }
    if (!header_seen) throw ParseError("empty calibration file", 0);
    if (table.points.size() < 2)
        throw ParseError("calibration table needs at least 2 points", lineno);
    return table;
}

CalibrationTable load_table(const std::string& path, PropertyKind kind) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open calibration file: " + path, 0);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_table(buf.str(), kind);
}

double property_for_fraction(const CalibrationTable& table, double fraction) {
    table.validate();
    const std::vector<CalibrationTable::Point>& pts = table.points;
    if (fraction < pts.front().weight_fraction || fraction > pts.back().weight_fraction)
        throw DomainError("fraction outside the calibrated range");

    // Exact at the knots, log-linear between them.
    const auto upper = std::upper_bound(
        pts.begin(), pts.end(), fraction,
        [](double f, const CalibrationTable::Point& p) { return f < p.weight_fraction; });
    const std::size_t hi = std::min(static_cast<std::size_t>(upper - pts.begin()), pts.size() - 1);
    const std::size_t lo = hi - (hi > 0 ? 1 : 0);
    if (fraction == pts[lo].weight_fraction) return pts[lo].value;
    if (fraction == pts[hi].weight_fraction) return pts[hi].value;
    const double t =
        (fraction - pts[lo].weight_fraction) / (pts[hi].weight_fraction - pts[lo].weight_fraction);
    const double lv = (1.0 - t) * std::log10(pts[lo].value) + t * std::log10(pts[hi].value);
    return std::pow(10.0, lv);
}

double fraction_for_property(const CalibrationTable& table, double target_value) {
    table.validate();
    if (!(target_value > 0.0)) throw DomainError("target property must be positive");
    const std::vector<CalibrationTable::Point>& pts = table.points;

    const bool increasing = pts.back().value > pts.front().value;
    double prev = pts.front().value;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (increasing ? pts[i].value <= prev : pts[i].value >= prev)
            throw DomainError("inversion needs a strictly monotone table");
        prev = pts[i].value;
    }

    const double vmin = increasing ? pts.front().value : pts.back().value;
    const double vmax = increasing ? pts.back().value : pts.front().value;
    if (target_value < vmin)
        throw UnreachableError("target below the calibrated range", vmin);
    if (target_value > vmax)
        throw UnreachableError("target above the calibrated range", vmax);

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i].value, b = pts[i + 1].value;
        if (target_value == a) return pts[i].weight_fraction;
        if (target_value == b) return pts[i + 1].weight_fraction;
        const bool inside = increasing ? (target_value > a && target_value < b)
                                       : (target_value < a && target_value > b);
        if (!inside) continue;
        const double t =
            (std::log10(target_value) - std::log10(a)) / (std::log10(b) - std::log10(a));
        return pts[i].weight_fraction +
               t * (pts[i + 1].weight_fraction - pts[i].weight_fraction);
    }
    // Monotonicity guarantees one interval matched; reaching here means the
    // target equals the last knot.
    return pts.back().weight_fraction;
}

PercolationResult percolation_threshold(const CalibrationTable& table) {
    table.validate();
    if (table.points.size() < 3)
        throw DomainError("percolation detection needs at least 3 points");
    const std::vector<CalibrationTable::Point>& pts = table.points;
    double best_slope = 0.0;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double slope = (std::log10(pts[i + 1].value) - std::log10(pts[i].value)) /
                             (pts[i + 1].weight_fraction - pts[i].weight_fraction);
        if (slope > best_slope) {
            best_slope = slope;
            best = i;
            found = true;
        }
    }
    if (!found) return {false, 0.0, 0.0};
    return {true, pts[best].weight_fraction, pts[best + 1].weight_fraction};
}

} // namespace imtk
