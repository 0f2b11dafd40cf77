#include "imtk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "imtk/errors.hpp"
#include "imtk/rng.hpp"

namespace imtk {

std::pair<double, double> wilson_interval(long errors, long trials) {
    if (trials < 1) throw DomainError("interval needs at least one trial");
    if (errors < 0 || errors > trials) throw DomainError("error count outside [0, trials]");
    constexpr double z = 1.959963984540054; // 95% two-sided
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

AudioClip add_audio_noise(const AudioClip& clip, double snr_db, std::uint64_t rng_seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) return clip;
    double rms = 0.0;
    for (double s : clip.samples) rms += s * s;
    rms = std::sqrt(rms / std::max<std::size_t>(1, clip.samples.size()));
    if (rms == 0.0) return clip;
    const double sd = rms / std::pow(10.0, snr_db / 20.0);
    AudioClip out = clip;
    RandomStream rng(rng_seed);
    for (double& s : out.samples) s = std::clamp(s + sd * rng.normal(), -1.0, 1.0);
    return out;
}

void set_noise_field(NoiseConfig& config, const std::string& field, double value) {
    if (field == "force_mean_n") config.force_mean_n = value;
    else if (field == "force_sd_n") config.force_sd_n = value;
    else if (field == "contact_radius_jitter") config.contact_radius_jitter = value;
    else if (field == "s11_noise_db") config.s11_noise_db = value;
    else if (field == "contact_distance_lo_m") config.contact_distance_lo_m = value;
    else if (field == "contact_distance_hi_m") config.contact_distance_hi_m = value;
    else if (field == "mag_noise_t") config.mag_noise_t = value;
    else if (field == "audio_snr_db") config.audio_snr_db = value;
    else throw ConfigError("unknown noise field: " + field);
}

namespace {

// Per-channel salts for deriving independent synthesis streams from a
// trial's seed.
constexpr std::uint64_t kSaltElectrical = 0xE1EC7C81;
constexpr std::uint64_t kSaltMagnetic = 0x3A63E71C;
constexpr std::uint64_t kSaltSwipe = 0x5D1BE;
constexpr std::uint64_t kSaltAudioNoise = 0xAD10;

struct Tally {
    long electrical = 0;
    long magnetic = 0;
    long surface = 0;
    long word = 0;
};

void check_consistent(const CodePlan& plan, const TextureModel& model) {
    model.validate();
    if (model.classes.size() < static_cast<std::size_t>(1 << plan.allocation.surface_bits))
        throw ConfigError("texture model covers fewer classes than the plan allocates");
    const std::size_t need = static_cast<std::size_t>(1 << plan.allocation.surface_bits);
    for (std::size_t i = 0; i < need; ++i) {
        if (i >= plan.surface_classes.size() ||
            model.classes[i].class_id != plan.surface_classes[i].class_id ||
            model.classes[i].texture != plan.surface_classes[i].texture ||
            model.classes[i].energy != plan.surface_classes[i].energy)
            throw ConfigError("texture model class table does not match the plan");
    }
}

ChannelTally finish(long errors, long trials) {
    ChannelTally t;
    t.errors = errors;
    t.rate = static_cast<double>(errors) / static_cast<double>(trials);
    const auto [lo, hi] = wilson_interval(errors, trials);
    t.wilson_lo = lo;
    t.wilson_hi = hi;
    return t;
}

} // namespace

TrialReport run_monte_carlo(const CodePlan& plan, const TextureModel& model,
                            const NoiseConfig& noise, long trials, std::uint64_t rng_seed,
                            int n_threads, std::vector<TrialRecord>* records) {
    plan.validate();
    noise.validate();
    if (trials < 1) throw DomainError("at least one trial required");
    check_consistent(plan, model);
    n_threads = std::clamp(n_threads, 1, 64);

    if (records) records->assign(static_cast<std::size_t>(trials), TrialRecord{});

    const MagnetPixel magnet_pixel;
    const FingerModel finger;

    auto run_range = [&](long begin, long end, Tally& tally) {
        MaterialPixel pixel;
        for (long t = begin; t < end; ++t) {
            const std::uint64_t trial_seed = derive_seed(rng_seed, static_cast<std::uint64_t>(t));
            RandomStream rs(trial_seed);

            SymbolWord word;
            word.s_e = static_cast<int>(rs.uniform_index(1u << plan.allocation.electrical_bits));
            word.s_m = static_cast<int>(rs.uniform_index(1u << plan.allocation.magnetic_bits));
            word.s_s = static_cast<int>(rs.uniform_index(1u << plan.allocation.surface_bits));
            const MaterialSpec spec = encode(word, plan);

            pixel.resistivity_ohm_m = 1.0 / spec.target_conductivity_s_per_m;
            const std::vector<SweepFrame> frames = synth_sweep_frames(
                pixel, finger, noise, plan.vote_frames, derive_seed(trial_seed, kSaltElectrical));
            const int e_dec = decode_electrical(frames, plan);

            const double distance =
                rs.uniform(noise.contact_distance_lo_m, noise.contact_distance_hi_m);
            const std::vector<MagSample> trace =
                synth_magnetometer_trace(spec.target_remanence_t, magnet_pixel, distance,
                                         kTrialTraceDuration, noise,
                                         derive_seed(trial_seed, kSaltMagnetic));
            const int m_dec = decode_magnetic(trace, plan);

            const double speed = kNominalSwipeSpeed * rs.uniform(0.95, 1.05);
            AudioClip clip =
                synth_swipe(plan.surface_classes[static_cast<std::size_t>(word.s_s)], speed,
                            kTrialSwipeDuration, derive_seed(trial_seed, kSaltSwipe));
            clip = add_audio_noise(clip, noise.audio_snr_db,
                                   derive_seed(trial_seed, kSaltAudioNoise));
            const int s_id = decode_surface(model, clip);
            int s_dec = -1;
            for (std::size_t i = 0; i < plan.surface_classes.size(); ++i)
                if (plan.surface_classes[i].class_id == s_id) {
                    s_dec = static_cast<int>(i);
                    break;
                }

            const bool e_ok = e_dec == word.s_e;
            const bool m_ok = m_dec == word.s_m;
            const bool s_ok = s_dec == word.s_s;
            if (!e_ok) ++tally.electrical;
            if (!m_ok) ++tally.magnetic;
            if (!s_ok) ++tally.surface;
            if (!(e_ok && m_ok && s_ok)) ++tally.word;

            if (records) {
                TrialRecord& r = (*records)[static_cast<std::size_t>(t)];
                r.trial = t;
                r.true_word = word.value(plan.allocation);
                if (e_ok && m_ok && s_ok) {
                    r.decoded_word = r.true_word;
                } else if (m_dec == kNoDetection || s_dec < 0 ||
                           s_dec >= (1 << plan.allocation.surface_bits)) {
                    r.decoded_word = -1;
                } else {
                    SymbolWord d{e_dec, m_dec, s_dec};
                    r.decoded_word = d.value(plan.allocation);
                }
                r.electrical_ok = e_ok;
                r.magnetic_ok = m_ok;
                r.surface_ok = s_ok;
            }
        }
    };

    std::vector<Tally> tallies(static_cast<std::size_t>(n_threads));
    if (n_threads == 1) {
        run_range(0, trials, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (trials + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const long begin = w * chunk;
            const long end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end, std::ref(tallies[static_cast<std::size_t>(w)]));
        }
        for (std::thread& th : pool) th.join();
    }

    Tally total;
    for (const Tally& t : tallies) {
        total.electrical += t.electrical;
        total.magnetic += t.magnetic;
        total.surface += t.surface;
        total.word += t.word;
    }

    TrialReport report;
    report.trials = trials;
    report.rng_seed = rng_seed;
    report.config = noise;
    report.electrical = finish(total.electrical, trials);
    report.magnetic = finish(total.magnetic, trials);
    report.surface = finish(total.surface, trials);
    report.word = finish(total.word, trials);
    return report;
}

std::vector<std::pair<AudioClip, int>> make_training_corpus(
    const std::vector<SurfaceClass>& classes, int clips_per_class, double duration_s,
    double snr_db, std::uint64_t rng_seed) {
    if (classes.empty()) throw DomainError("corpus needs at least one class");
    if (clips_per_class < 1) throw DomainError("at least one clip per class required");
    std::vector<std::pair<AudioClip, int>> corpus;
    corpus.reserve(classes.size() * static_cast<std::size_t>(clips_per_class));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (int j = 0; j < clips_per_class; ++j) {
            const std::uint64_t clip_seed =
                derive_seed(rng_seed, (static_cast<std::uint64_t>(c) << 20) |
                                          static_cast<std::uint64_t>(j));
            RandomStream rs(clip_seed);
            const double speed = kNominalSwipeSpeed * rs.uniform(0.95, 1.05);
            AudioClip clip =
                synth_swipe(classes[c], speed, duration_s, derive_seed(clip_seed, kSaltSwipe));
            clip = add_audio_noise(clip, snr_db, derive_seed(clip_seed, kSaltAudioNoise));
            corpus.emplace_back(std::move(clip), classes[c].class_id);
        }
    }
    return corpus;
}

std::vector<std::pair<double, TrialReport>> sensitivity_sweep(
    const CodePlan& plan, const TextureModel& model, const NoiseConfig& base,
    const std::string& field, const std::vector<double>& values, long trials,
    std::uint64_t rng_seed, int n_threads) {
    {
        // Validate the field name up front so an empty value list still
        // rejects unknown names.
        NoiseConfig probe = base;
        set_noise_field(probe, field, 0.0);
    }
    std::vector<std::pair<double, TrialReport>> out;
    out.reserve(values.size());
    for (double v : values) {
        NoiseConfig cfg = base;
        set_noise_field(cfg, field, v);
        out.emplace_back(v, run_monte_carlo(plan, model, cfg, trials, rng_seed, n_threads));
    }
    return out;
}

} // namespace imtk
