#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "imtk/codec.hpp"
#include "imtk/noise.hpp"

namespace imtk {

/// Error tally for one channel (or the joint word) with a Wilson 95%
/// confidence interval on the error rate.
struct ChannelTally {
    long errors = 0;
    double rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

/// Per-trial record for the optional CSV matrix.
struct TrialRecord {
    long trial;
    long true_word;
    long decoded_word; // -1 when a channel failed outright
    bool electrical_ok;
    bool magnetic_ok;
    bool surface_ok;
};

/// Monte Carlo result. Joint word errors count trials where any channel
/// missed, so the joint rate is never below a per-channel rate by more than
/// binomial noise.
struct TrialReport {
    long trials = 0;
    std::uint64_t rng_seed = 0;
    ChannelTally electrical;
    ChannelTally magnetic;
    ChannelTally surface;
    ChannelTally word;
    NoiseConfig config;
};

/// Wilson 95% score interval for k errors in n trials.
std::pair<double, double> wilson_interval(long errors, long trials);

/// Run `trials` independent encode -> synthesize -> decode trials.
///
/// Each trial derives its own seed from the master seed by counter, draws a
/// uniform random word, synthesizes all three traces with independent noise
/// draws (tap force, radius jitter, sweep noise, contact distance, sensor
/// noise, swipe speed, audio noise) and tallies per-channel and joint word
/// errors. Deterministic for a given seed, including with n_threads > 1:
/// trial seeds are index-derived and tallies are plain sums.
/// `records`, when non-null, receives one TrialRecord per trial in trial
/// order. Throws ConfigError when plan and model disagree on the class
/// table, DomainError for trials < 1.
TrialReport run_monte_carlo(const CodePlan& plan, const TextureModel& model,
                            const NoiseConfig& noise, long trials, std::uint64_t rng_seed,
                            int n_threads = 1, std::vector<TrialRecord>* records = nullptr);

/// One Monte Carlo run per value of the named NoiseConfig field (e.g.
/// "contact_distance_hi_m", "s11_noise_db"), base config otherwise
/// unchanged, shared master seed. Throws ConfigError for unknown field
/// names.
std::vector<std::pair<double, TrialReport>> sensitivity_sweep(
    const CodePlan& plan, const TextureModel& model, const NoiseConfig& base,
    const std::string& field, const std::vector<double>& values, long trials,
    std::uint64_t rng_seed, int n_threads = 1);

/// Set a NoiseConfig field by name. Throws ConfigError for unknown names.
void set_noise_field(NoiseConfig& config, const std::string& field, double value);

/// Additive white Gaussian noise at the given SNR (dB, relative to the
/// clip's RMS); +infinity returns the clip unchanged. Samples are clamped
/// to [-1, 1]. Deterministic per seed.
AudioClip add_audio_noise(const AudioClip& clip, double snr_db, std::uint64_t rng_seed);

/// Synthetic swipe corpus for classifier training and evaluation:
/// clips_per_class clips per class, per-clip swipe speed jittered exactly
/// like the Monte Carlo trial protocol, additive audio noise at snr_db.
/// Entries are grouped by class in table order. Deterministic per seed.
std::vector<std::pair<AudioClip, int>> make_training_corpus(
    const std::vector<SurfaceClass>& classes, int clips_per_class, double duration_s,
    double snr_db, std::uint64_t rng_seed);

/// The fixed default swipe speed used by trial synthesis, m/s; individual
/// trials jitter it by a uniform factor in [0.95, 1.05].
inline constexpr double kNominalSwipeSpeed = 0.15;
/// Swipe clip length used by trial synthesis, s.
inline constexpr double kTrialSwipeDuration = 0.5;
/// Magnetometer trace length used by trial synthesis, s.
inline constexpr double kTrialTraceDuration = 1.5;

} // namespace imtk
