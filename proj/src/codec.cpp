#include "imtk/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "imtk/errors.hpp"

namespace imtk {

void BitAllocation::validate() const {
    if (electrical_bits < 0 || magnetic_bits < 0 || surface_bits < 0)
        throw DomainError("bit counts must be non-negative");
    if (total_bits() < 1) throw DomainError("allocation must carry at least 1 bit");
    if (total_bits() > 40) throw DomainError("allocation too wide for word packing");
}

void SymbolWord::validate(const BitAllocation& alloc) const {
    alloc.validate();
    if (s_e < 0 || s_e >= (1 << alloc.electrical_bits))
        throw DomainError("electrical symbol outside its allocation");
    if (s_m < 0 || s_m >= (1 << alloc.magnetic_bits))
        throw DomainError("magnetic symbol outside its allocation");
    if (s_s < 0 || s_s >= (1 << alloc.surface_bits))
        throw DomainError("surface symbol outside its allocation");
}

long SymbolWord::value(const BitAllocation& alloc) const {
    validate(alloc);
    return (static_cast<long>(s_e) << (alloc.magnetic_bits + alloc.surface_bits)) |
           (static_cast<long>(s_m) << alloc.surface_bits) | static_cast<long>(s_s);
}

SymbolWord SymbolWord::from_value(long value, const BitAllocation& alloc) {
    alloc.validate();
    if (value < 0 || value >= (1L << alloc.total_bits()))
        throw DomainError("word value outside the allocation range");
    SymbolWord w;
    w.s_s = static_cast<int>(value & ((1L << alloc.surface_bits) - 1));
    w.s_m = static_cast<int>((value >> alloc.surface_bits) & ((1L << alloc.magnetic_bits) - 1));
    w.s_e = static_cast<int>(value >> (alloc.magnetic_bits + alloc.surface_bits));
    return w;
}

void CodePlan::validate() const {
    allocation.validate();
    electrical.validate();
    magnetic.validate();
    if (vote_frames < 1) throw DomainError("vote window must be at least 1 frame");
    if (electrical.n_states != (1 << allocation.electrical_bits))
        throw DomainError("electrical ladder size does not match the allocation");
    if (magnetic.n_states != (1 << allocation.magnetic_bits))
        throw DomainError("magnetic ladder size does not match the allocation");
    if (surface_classes.size() < static_cast<std::size_t>(1 << allocation.surface_bits))
        throw DomainError("surface class table smaller than the allocation");
    if (electrical_thresholds_db.size() + 1 != static_cast<std::size_t>(electrical.n_states))
        throw DomainError("electrical threshold count must be states - 1");
    if (magnetic_thresholds_t.size() + 1 != static_cast<std::size_t>(magnetic.n_states))
        throw DomainError("magnetic threshold count must be states - 1");
    for (std::size_t i = 0; i + 1 < electrical_thresholds_db.size(); ++i)
        if (electrical_thresholds_db[i] <= electrical_thresholds_db[i + 1])
            throw DomainError("electrical thresholds must strictly decrease");
    for (std::size_t i = 0; i + 1 < magnetic_thresholds_t.size(); ++i)
        if (magnetic_thresholds_t[i] >= magnetic_thresholds_t[i + 1])
            throw DomainError("magnetic thresholds must strictly increase");
    std::set<int> ids;
    for (const SurfaceClass& c : surface_classes) {
        c.validate();
        if (!ids.insert(c.class_id).second)
            throw DomainError("duplicate surface class id");
    }
}

namespace {

/// Trace length used for magnetic threshold planning. Any duration >= 1 s
/// gives identical noiseless statistics (the approach settles at 0.8 s),
/// so planning and trial synthesis agree exactly.
constexpr double kPlanTraceDuration = 1.5;

std::vector<double> electrical_state_stats(const ElectricalLadder& ladder) {
    MaterialPixel pixel;
    FingerModel finger;
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(ladder.n_states));
    for (double sigma : ladder.conductivities()) {
        pixel.resistivity_ohm_m = 1.0 / sigma;
        stats.push_back(noiseless_band_stat_db(pixel, finger));
    }
    return stats;
}

std::vector<double> magnetic_state_stats(const MagneticLadder& ladder) {
    MagnetPixel pixel;
    const NoiseConfig zero = NoiseConfig::zero();
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(ladder.n_states));
    for (double reading : ladder.readings()) {
        const double b_r = remanence_for_reading(reading, pixel);
        const std::vector<MagSample> trace = synth_magnetometer_trace(
            b_r, pixel, zero.contact_distance_lo_m, kPlanTraceDuration, zero, 0);
        stats.push_back(peak_excess(trace));
    }
    return stats;
}

} // namespace

CodePlan plan(const BitAllocation& alloc, const PlanBounds& bounds,
              const std::vector<SurfaceClass>& surface_table, int vote_frames) {
    alloc.validate();
    if (vote_frames < 1) throw DomainError("vote window must be at least 1 frame");
    if (surface_table.empty()) throw PlanningError("surface class table is empty", "surface");

    CodePlan out;
    out.allocation = alloc;
    out.vote_frames = vote_frames;
    out.surface_classes = surface_table;

    // Surface capacity is the class table itself; degrade the allocation
    // rather than claim classes that do not exist.
    int sb = alloc.surface_bits;
    while (sb > 0 && (1u << sb) > surface_table.size()) --sb;
    if (sb != alloc.surface_bits) {
        out.allocation.surface_bits = sb;
        out.warnings.push_back(
            "surface class table has " + std::to_string(surface_table.size()) +
            " classes; degrading the surface allocation to " + std::to_string(sb) + " bits");
    }

    const auto [e_cap, e_bits] =
        electrical_capacity(bounds.electrical.hi, bounds.electrical.lo, bounds.electrical.margin);
    (void)e_bits;
    if ((1 << alloc.electrical_bits) > e_cap)
        throw PlanningError("electrical capacity " + std::to_string(e_cap) + " states < " +
                                std::to_string(1 << alloc.electrical_bits) + " required",
                            "electrical");
    const auto [m_cap, m_bits] =
        magnetic_capacity(bounds.magnetic.hi, bounds.magnetic.lo, bounds.magnetic.margin);
    (void)m_bits;
    if ((1 << alloc.magnetic_bits) > m_cap)
        throw PlanningError("magnetic capacity " + std::to_string(m_cap) + " states < " +
                                std::to_string(1 << alloc.magnetic_bits) + " required",
                            "magnetic");

    out.electrical.sigma0_s_per_m = 1.0 / bounds.electrical.hi;
    out.electrical.ratio = bounds.electrical.margin;
    out.electrical.n_states = 1 << alloc.electrical_bits;

    out.magnetic.b_lo_t = bounds.magnetic.lo;
    out.magnetic.ratio = bounds.magnetic.margin;
    out.magnetic.n_states = 1 << alloc.magnetic_bits;

    // Decision thresholds at geometric midpoints between adjacent noiseless
    // state statistics. Electrical statistics are negative dB values, so
    // the midpoint is taken on their magnitudes.
    const std::vector<double> e_stats = electrical_state_stats(out.electrical);
    for (std::size_t k = 0; k + 1 < e_stats.size(); ++k) {
        if (e_stats[k] <= e_stats[k + 1] || e_stats[k + 1] >= 0.0)
            throw PlanningError("electrical state statistics are not separable", "electrical");
        out.electrical_thresholds_db.push_back(-std::sqrt(e_stats[k] * e_stats[k + 1]));
    }
    const std::vector<double> m_stats = magnetic_state_stats(out.magnetic);
    for (std::size_t k = 0; k + 1 < m_stats.size(); ++k) {
        if (m_stats[k] >= m_stats[k + 1] || m_stats[k] <= 0.0)
            throw PlanningError("magnetic state statistics are not separable", "magnetic");
        out.magnetic_thresholds_t.push_back(std::sqrt(m_stats[k] * m_stats[k + 1]));
    }

    out.validate();
    return out;
}

MaterialSpec encode(const SymbolWord& word, const CodePlan& plan) {
    plan.validate();
    word.validate(plan.allocation);
    MaterialSpec spec;
    spec.target_conductivity_s_per_m =
        plan.electrical.conductivities()[static_cast<std::size_t>(word.s_e)];
    spec.target_reading_t = plan.magnetic.readings()[static_cast<std::size_t>(word.s_m)];
    spec.target_remanence_t = remanence_for_reading(spec.target_reading_t, MagnetPixel{});
    spec.surface_class_id = plan.surface_classes[static_cast<std::size_t>(word.s_s)].class_id;
    return spec;
}

namespace {

int electrical_state_for(double stat_db, const std::vector<double>& thresholds) {
    // Thresholds decrease; the state index is the number of boundaries the
    // statistic has fallen below.
    int state = 0;
    for (double thr : thresholds)
        if (stat_db < thr) ++state;
    return state;
}

double threshold_margin(double stat, const std::vector<double>& thresholds, int state) {
    double margin = std::numeric_limits<double>::infinity();
    if (state > 0)
        margin = std::min(margin, std::abs(stat - thresholds[static_cast<std::size_t>(state - 1)]));
    if (static_cast<std::size_t>(state) < thresholds.size())
        margin = std::min(margin, std::abs(stat - thresholds[static_cast<std::size_t>(state)]));
    return std::isinf(margin) ? 0.0 : margin;
}

} // namespace

int decode_electrical(const std::vector<SweepFrame>& frames, const CodePlan& plan) {
    if (frames.empty()) throw DomainError("electrical decode needs at least one frame");
    const std::size_t used = std::min(frames.size(), static_cast<std::size_t>(plan.vote_frames));

    std::vector<int> votes(static_cast<std::size_t>(plan.electrical.n_states), 0);
    std::vector<double> margin(static_cast<std::size_t>(plan.electrical.n_states), 0.0);
    for (std::size_t i = 0; i < used; ++i) {
        const double stat = band_mean_s11_db(frames[i]);
        const int state = electrical_state_for(stat, plan.electrical_thresholds_db);
        ++votes[static_cast<std::size_t>(state)];
        margin[static_cast<std::size_t>(state)] +=
            threshold_margin(stat, plan.electrical_thresholds_db, state);
    }
    int best = 0;
    for (int s = 1; s < plan.electrical.n_states; ++s) {
        const std::size_t a = static_cast<std::size_t>(s), b = static_cast<std::size_t>(best);
        if (votes[a] > votes[b] || (votes[a] == votes[b] && margin[a] > margin[b])) best = s;
    }
    return best;
}

int decode_magnetic(const std::vector<MagSample>& trace, const CodePlan& plan) {
    const double excess = peak_excess(trace);
    const std::vector<double> readings = plan.magnetic.readings();
    if (excess < readings.front() / 2.0) return kNoDetection;
    int state = 0;
    for (double thr : plan.magnetic_thresholds_t)
        if (excess > thr) ++state;
    return state;
}

int decode_surface(const TextureModel& model, const AudioClip& clip) {
    return classify(model, clip, std::max(0.2, clip.duration_s()));
}

SymbolWord decode_word(const std::vector<SweepFrame>& frames, const std::vector<MagSample>& trace,
                       const AudioClip& clip, const CodePlan& plan, const TextureModel& model) {
    SymbolWord w;
    w.s_e = decode_electrical(frames, plan);
    w.s_m = decode_magnetic(trace, plan);
    if (w.s_m == kNoDetection) throw DecodeError("no magnetic pixel detected", "magnetic");
    const int class_id = decode_surface(model, clip);
    int index = -1;
    for (std::size_t i = 0; i < plan.surface_classes.size(); ++i)
        if (plan.surface_classes[i].class_id == class_id) {
            index = static_cast<int>(i);
            break;
        }
    if (index < 0 || index >= (1 << plan.allocation.surface_bits))
        throw DecodeError("decoded surface class is outside the plan allocation", "surface");
    w.s_s = index;
    w.validate(plan.allocation);
    return w;
}

} // namespace imtk
