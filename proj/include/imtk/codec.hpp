#pragma once

#include <string>
#include <vector>

#include "imtk/electrical.hpp"
#include "imtk/magnetics.hpp"
#include "imtk/surface.hpp"

namespace imtk {

/// Bits carried per channel. Defaults pack 12 bits into 4096 words.
struct BitAllocation {
    int electrical_bits = 5;
    int magnetic_bits = 3;
    int surface_bits = 4;

    int total_bits() const { return electrical_bits + magnetic_bits + surface_bits; }

    /// Throws DomainError for negative fields or a zero total.
    void validate() const;
};

/// 12-bit word split across the three channels. Packing is big-endian by
/// channel: electrical in the high bits, surface in the low bits.
struct SymbolWord {
    int s_e = 0;
    int s_m = 0;
    int s_s = 0;

    /// (s_e << (mb+sb)) | (s_m << sb) | s_s.
    long value(const BitAllocation& alloc) const;

    static SymbolWord from_value(long value, const BitAllocation& alloc);

    /// Throws DomainError when a field is outside its allocation range.
    void validate(const BitAllocation& alloc) const;
};

/// Capacity inputs for one physical channel: the usable property range and
/// the multiplicative read margin between adjacent states.
struct ChannelBounds {
    double lo;
    double hi;
    double margin;
};

/// Default capacity bounds: electrical in resistivity (skin resistivity up
/// to the pure base material), magnetic in peak reading (Earth field up to
/// fridge-magnet strength).
struct PlanBounds {
    ChannelBounds electrical{11.0, 1.86e8, 1.68};
    ChannelBounds magnetic{5e-5, 1e-2, 1.81};
};

/// A fully planned code: ladders, class table, decision thresholds and the
/// vote window. Immutable once built; serialized as versioned JSON.
struct CodePlan {
    BitAllocation allocation;
    ElectricalLadder electrical;
    MagneticLadder magnetic;
    std::vector<SurfaceClass> surface_classes;
    /// Band-mean S11 boundaries, dB, strictly decreasing, one fewer than
    /// electrical states. State k lies between thresholds k-1 and k.
    std::vector<double> electrical_thresholds_db;
    /// Peak-excess boundaries, T, strictly increasing, one fewer than
    /// magnetic states.
    std::vector<double> magnetic_thresholds_t;
    int vote_frames = 30;
    /// Non-fatal planning notes (e.g. surface bits degraded to fit a small
    /// class table).
    std::vector<std::string> warnings;

    int electrical_states() const { return electrical.n_states; }
    int magnetic_states() const { return magnetic.n_states; }

    void validate() const;
};

/// Fabrication target for one encoded word.
struct MaterialSpec {
    double target_conductivity_s_per_m;
    /// Peak field reading the magnetic state is defined by (ladder space).
    double target_reading_t;
    /// Residual flux density realizing that reading at the nominal 2.5 mm
    /// standoff.
    double target_remanence_t;
    int surface_class_id;
};

/// Build a CodePlan: checks per-channel capacity against the allocation
/// (throws PlanningError naming the violating channel), constructs
/// geometric ladders from the bounds, runs the noiseless forward models per
/// state and places decision thresholds at geometric midpoints between
/// adjacent state statistics. A class table smaller than 2^surface_bits
/// degrades the surface allocation to fit, with a warning.
CodePlan plan(const BitAllocation& alloc = {}, const PlanBounds& bounds = {},
              const std::vector<SurfaceClass>& surface_table = default_class_table(),
              int vote_frames = 30);

/// Word -> fabrication targets (ladder entries + class table row).
/// Throws DomainError for out-of-range word fields.
MaterialSpec encode(const SymbolWord& word, const CodePlan& plan);

/// Decode state returned when the magnetic trace shows no pixel at all
/// (peak excess below half the state-0 reading).
inline constexpr int kNoDetection = -1;

/// Per frame: band-mean S11 -> threshold lookup -> state; plurality vote
/// over the first min(vote_frames, available) frames. Ties break toward the
/// larger aggregate distance-to-threshold margin, then the lower state.
/// Throws DomainError for empty input or a grid with no in-band point.
int decode_electrical(const std::vector<SweepFrame>& frames, const CodePlan& plan);

/// Peak-excess statistic -> threshold lookup. Returns kNoDetection when the
/// excess is below half the state-0 reading.
/// Throws DomainError for traces shorter than 10 samples.
int decode_magnetic(const std::vector<MagSample>& trace, const CodePlan& plan);

/// Full-swipe classification of the clip against the model.
int decode_surface(const TextureModel& model, const AudioClip& clip);

/// Decode all three channels and pack the word.
/// Throws DecodeError carrying the channel name when a channel fails
/// (magnetic no-detection, surface class outside the allocation).
SymbolWord decode_word(const std::vector<SweepFrame>& frames, const std::vector<MagSample>& trace,
                       const AudioClip& clip, const CodePlan& plan, const TextureModel& model);

} // namespace imtk
