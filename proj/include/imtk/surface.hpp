#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace imtk {

enum class Texture { smooth, velvet, rough, grippy, subtle_guide };
enum class Energy { high, low };

std::string to_string(Texture t);
std::string to_string(Energy e);
Texture texture_from_string(const std::string& s);
Energy energy_from_string(const std::string& s);

/// One decodable surface treatment: a texture geometry at a surface-energy
/// level. spatial_wavelength_m is the texture period (0 for smooth, which
/// has no periodic structure); amplitude is relative roughness in [0, 1].
struct SurfaceClass {
    int class_id = 0;
    Texture texture = Texture::smooth;
    Energy energy = Energy::high;
    /// Texture period, m; mesoscale band [2e-4, 1e-3] when nonzero.
    double spatial_wavelength_m = 0.0;
    double amplitude = 0.0;

    void validate() const;
};

/// The 16-slot class table used by default plans: the 10 demonstrated
/// texture/energy combinations plus 6 wavelength variants that fill the
/// 4-bit channel. class_id equals the table index.
std::vector<SurfaceClass> default_class_table();

/// The 10 demonstrated classes only (5 textures x 2 energies).
std::vector<SurfaceClass> demonstrated_class_table();

/// Mono audio clip, samples in [-1, 1].
struct AudioClip {
    int sample_rate_hz = 44100;
    std::vector<double> samples;

    double duration_s() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }

    /// Throws DomainError when the rate is below 40 kHz (the band of
    /// interest reaches 20 kHz) or a sample is non-finite or out of range.
    void validate() const;
};

/// Synthesize the audio of one swipe over a textured surface.
///
/// Tonal classes produce f0 = speed / wavelength with 3 harmonics at 1/k
/// amplitude decay plus a low broadband bed; the instantaneous rate follows
/// a swipe-shaped speed profile (slow ends, fast middle), which is what
/// makes short windows genuinely harder than full swipes. Low-energy
/// classes reduce harmonic amplitude by 40% and add Poisson stick-slip
/// bursts at 30/s. Smooth classes emit only broadband noise at -30 dBFS.
/// Deterministic per seed.
/// Throws DomainError for speed outside [0.05, 0.3] m/s or duration outside
/// [0.2, 3] s.
AudioClip synth_swipe(const SurfaceClass& cls, double speed_m_per_s, double duration_s,
                      std::uint64_t rng_seed);

/// Second-order IIR notch at f0 with quality factor q. Unity gain at DC and
/// Nyquist by construction. Output length equals input length.
/// Throws DomainError for f0 outside (0, rate/2) or q <= 0.
AudioClip notch_filter(const AudioClip& clip, double f0_hz, double q);

/// The fixed mains/electronics cleanup chain: notches at 60, 8000, 14000
/// and 16000 Hz, Q = 10 each, applied in that order.
AudioClip preprocess(const AudioClip& clip);

/// Log-magnitude mel spectrogram: Hann window 2048, hop 1024, 40 mel bands
/// (mel(f) = 2595 log10(1 + f/700)), log10 with floor 1e-10.
/// Frame count is floor((N - 2048)/1024) + 1.
/// Throws DomainError when the clip is shorter than one window.
std::vector<std::vector<double>> spectrogram(const AudioClip& clip);

/// mel(f) = 2595 log10(1 + f/700).
double mel_from_hz(double f_hz);

/// 80-dimensional clip descriptor: per-band mean then per-band standard
/// deviation of the log-mel spectrogram. Raw values; normalization happens
/// against model statistics at training/classification time.
std::vector<double> features(const AudioClip& clip);

/// One-vs-rest linear max-margin classifier over clip features.
struct TextureModel {
    std::vector<SurfaceClass> classes;
    /// Per-class weight vector (feature dimension) and bias.
    std::vector<std::vector<double>> weights;
    std::vector<double> biases;
    /// Feature normalization statistics captured at training time.
    std::vector<double> feat_mean;
    std::vector<double> feat_sd;

    void validate() const;
};

/// Train a one-vs-rest linear classifier: hinge loss + L2 penalty,
/// regularization constant 1, full-batch subgradient descent until the
/// gradient norm drops below 1e-4 or 1e4 epochs elapse. Deterministic given
/// corpus order. The 40 band-mean features are centered by their per-clip
/// grand mean before normalization, which makes classification exactly
/// invariant under global gain scaling of the clip.
/// Throws DomainError for corpora with < 2 classes or < 4 examples in any
/// class.
TextureModel train_classifier(const std::vector<std::pair<AudioClip, int>>& corpus,
                              const std::vector<SurfaceClass>& classes);

/// Decision values of one clip (already preprocessed internally), one per
/// class, higher = more confident.
std::vector<double> decision_values(const TextureModel& model, const AudioClip& clip);

/// Classify a clip by majority vote over consecutive window_s windows
/// (full-clip when window_s >= duration). Ties break by summed decision
/// value, then lowest class_id.
/// Throws DomainError for window_s < 0.2 s or a clip shorter than one
/// analysis window.
int classify(const TextureModel& model, const AudioClip& clip, double window_s);

} // namespace imtk
