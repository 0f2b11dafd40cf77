#include "imtk/surface.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "imtk/core.hpp"
#include "imtk/errors.hpp"
#include "imtk/rng.hpp"

namespace imtk {

std::string to_string(Texture t) {
    switch (t) {
        case Texture::smooth: return "smooth";
        case Texture::velvet: return "velvet";
        case Texture::rough: return "rough";
        case Texture::grippy: return "grippy";
        case Texture::subtle_guide: return "subtle_guide";
    }
    throw DomainError("unknown texture");
}

std::string to_string(Energy e) { return e == Energy::high ? "high" : "low"; }

Texture texture_from_string(const std::string& s) {
    if (s == "smooth") return Texture::smooth;
    if (s == "velvet") return Texture::velvet;
    if (s == "rough") return Texture::rough;
    if (s == "grippy") return Texture::grippy;
    if (s == "subtle_guide") return Texture::subtle_guide;
    throw DomainError("unknown texture name: " + s);
}

Energy energy_from_string(const std::string& s) {
    if (s == "high") return Energy::high;
    if (s == "low") return Energy::low;
    throw DomainError("unknown energy name: " + s);
}

void SurfaceClass::validate() const {
    if (class_id < 0) throw DomainError("class id must be non-negative");
    if (amplitude < 0.0 || amplitude > 1.0) throw DomainError("amplitude must lie in [0, 1]");
    if (texture == Texture::smooth) {
        if (spatial_wavelength_m != 0.0)
            throw DomainError("smooth classes carry no texture wavelength");
    } else {
        if (spatial_wavelength_m < 2e-4 || spatial_wavelength_m > 1e-3)
            throw DomainError("texture wavelength outside the mesoscale band [0.2, 1] mm");
    }
}

namespace {

SurfaceClass make_class(int id, Texture t, Energy e, double lambda, double amp) {
    SurfaceClass c;
    c.class_id = id;
    c.texture = t;
    c.energy = e;
    c.spatial_wavelength_m = lambda;
    c.amplitude = amp;
    return c;
}

} // namespace

std::vector<SurfaceClass> demonstrated_class_table() {
    // 5 textures x 2 energies. Wavelengths sit on a geometric grid so the
    // fundamental frequencies at nominal swipe speed are evenly separated
    // on a log axis.
    std::vector<SurfaceClass> t;
    t.push_back(make_class(0, Texture::smooth, Energy::high, 0.0, 0.0));
    t.push_back(make_class(1, Texture::smooth, Energy::low, 0.0, 0.0));
    t.push_back(make_class(2, Texture::velvet, Energy::high, 2.0e-4, 0.30));
    t.push_back(make_class(3, Texture::velvet, Energy::low, 2.0e-4, 0.30));
    t.push_back(make_class(4, Texture::rough, Energy::high, 5.837e-4, 0.70));
    t.push_back(make_class(5, Texture::rough, Energy::low, 5.837e-4, 0.70));
    t.push_back(make_class(6, Texture::grippy, Energy::high, 1.0e-3, 0.90));
    t.push_back(make_class(7, Texture::grippy, Energy::low, 1.0e-3, 0.90));
    t.push_back(make_class(8, Texture::subtle_guide, Energy::high, 3.409e-4, 0.35));
    t.push_back(make_class(9, Texture::subtle_guide, Energy::low, 3.409e-4, 0.35));
    return t;
}

std::vector<SurfaceClass> default_class_table() {
    // The 10 demonstrated classes plus 6 wavelength variants that fill the
    // 4-bit slot count. Variant wavelengths interleave the canonical grid.
    std::vector<SurfaceClass> t = demonstrated_class_table();
    t.push_back(make_class(10, Texture::velvet, Energy::high, 2.618e-4, 0.32));
    t.push_back(make_class(11, Texture::velvet, Energy::low, 2.618e-4, 0.32));
    t.push_back(make_class(12, Texture::rough, Energy::high, 4.464e-4, 0.65));
    t.push_back(make_class(13, Texture::rough, Energy::low, 4.464e-4, 0.65));
    t.push_back(make_class(14, Texture::grippy, Energy::high, 7.653e-4, 0.85));
    t.push_back(make_class(15, Texture::grippy, Energy::low, 7.653e-4, 0.85));
    return t;
}

void AudioClip::validate() const {
    if (sample_rate_hz < 40000)
        throw DomainError("sample rate below 40 kHz cannot represent the 0-20 kHz band");
    for (double s : samples)
        if (!std::isfinite(s) || s < -1.0 || s > 1.0)
            throw DomainError("sample outside [-1, 1]");
}

AudioClip synth_swipe(const SurfaceClass& cls, double speed_m_per_s, double duration_s,
                      std::uint64_t rng_seed) {
    cls.validate();
    if (speed_m_per_s < 0.05 || speed_m_per_s > 0.3)
        throw DomainError("swipe speed outside [0.05, 0.3] m/s");
    if (duration_s < 0.2 || duration_s > 3.0)
        throw DomainError("swipe duration outside [0.2, 3] s");

    AudioClip clip;
    const int sr = clip.sample_rate_hz;
    const int n = static_cast<int>(std::lround(duration_s * sr));
    clip.samples.assign(static_cast<std::size_t>(n), 0.0);

    RandomStream rng(rng_seed);
    const bool tonal = cls.texture != Texture::smooth;
    const bool low_energy = cls.energy == Energy::low;

    // Harmonic stack. Low surface energy damps the tonal component by 40%.
    const double harmonic_gain = 0.22 * cls.amplitude * (low_energy ? 0.6 : 1.0);
    std::array<double, 3> phase{};
    for (double& p : phase) p = rng.uniform(0.0, 2.0 * constants::pi);

    // Stick-slip bursts: only low-energy surfaces creep and re-grip.
    // Schedule drawn up front; each burst is enveloped white noise.
    std::vector<double> burst_env(static_cast<std::size_t>(n), 0.0);
    if (low_energy) {
        constexpr double rate_hz = 30.0;
        double t = 0.0;
        while (true) {
            t += -std::log(1.0 - rng.uniform()) / rate_hz;
            if (t >= duration_s) break;
            const double len_s = rng.uniform(4e-3, 12e-3);
            const double amp = 0.12 * rng.uniform(0.5, 1.5);
            const int start = static_cast<int>(t * sr);
            const int len = std::max(1, static_cast<int>(len_s * sr));
            const double tau = len / 3.0;
            for (int i = start; i < std::min(n, start + len); ++i)
                burst_env[static_cast<std::size_t>(i)] += amp * std::exp(-(i - start) / tau);
        }
    }

    // Broadband bed: the only component of smooth classes (-30 dBFS), a
    // faint rubbing floor for tonal ones.
    const double bed_sd = tonal ? 0.01 : std::pow(10.0, -30.0 / 20.0);

    // Swipe-shaped speed profile: slow at both ends, peaking at exactly the
    // nominal speed mid-swipe. The instantaneous fundamental dwells at f0
    // there (stationary phase), pinning the whole-clip spectral peak to f0,
    // while short windows away from the middle see a detuned fundamental.
    const double f0 = tonal ? speed_m_per_s / cls.spatial_wavelength_m : 0.0;
    const int fade = n / 20;

    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sr;
        double s = 0.0;
        if (tonal) {
            const double profile = 0.84 + 0.16 * std::sin(constants::pi * t / duration_s);
            const double dphi = 2.0 * constants::pi * f0 * profile / sr;
            for (int k = 0; k < 3; ++k) {
                phase[static_cast<std::size_t>(k)] += (k + 1) * dphi;
                s += harmonic_gain / (k + 1) * std::sin(phase[static_cast<std::size_t>(k)]);
            }
        }
        s += bed_sd * rng.normal();
        const double env = burst_env[static_cast<std::size_t>(i)];
        if (env > 0.0) s += env * rng.normal();
        if (i < fade) s *= static_cast<double>(i) / fade;
        if (n - 1 - i < fade) s *= static_cast<double>(n - 1 - i) / fade;
        clip.samples[static_cast<std::size_t>(i)] = std::clamp(s, -1.0, 1.0);
    }
    return clip;
}

AudioClip notch_filter(const AudioClip& clip, double f0_hz, double q) {
    if (!(q > 0.0)) throw DomainError("notch quality factor must be positive");
    if (!(f0_hz > 0.0) || f0_hz >= clip.sample_rate_hz / 2.0)
        throw DomainError("notch frequency must lie strictly below Nyquist");

    // Biquad notch; (b0+b1+b2) = (a0+a1+a2) and b0-b1+b2 = a0-a1+a2, so DC
    // and Nyquist gain are exactly 1.
    const double w0 = 2.0 * constants::pi * f0_hz / clip.sample_rate_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double cw = std::cos(w0);
    const double a0 = 1.0 + alpha;
    const double b0 = 1.0 / a0;
    const double b1 = -2.0 * cw / a0;
    const double b2 = 1.0 / a0;
    const double a1 = -2.0 * cw / a0;
    const double a2 = (1.0 - alpha) / a0;

    AudioClip out;
    out.sample_rate_hz = clip.sample_rate_hz;
    out.samples.resize(clip.samples.size());
    double z1 = 0.0, z2 = 0.0; // direct form II transposed state
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        const double x = clip.samples[i];
        const double y = b0 * x + z1;
        z1 = b1 * x - a1 * y + z2;
        z2 = b2 * x - a2 * y;
        out.samples[i] = y;
    }
    return out;
}

AudioClip preprocess(const AudioClip& clip) {
    AudioClip out = notch_filter(clip, 60.0, 10.0);
    out = notch_filter(out, 8000.0, 10.0);
    out = notch_filter(out, 14000.0, 10.0);
    return notch_filter(out, 16000.0, 10.0);
}

namespace {

constexpr int kFftSize = 2048;
constexpr int kHop = 1024;
constexpr int kMelBands = 40;
constexpr double kLogFloor = 1e-10;

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * constants::pi / static_cast<double>(len);
        const std::complex<double> wn(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wn;
            }
        }
    }
}

/// Triangular mel filterbank over FFT bin magnitudes, 40 bands spanning
/// 0 Hz to Nyquist on the mel axis.
std::vector<std::vector<std::pair<int, double>>> mel_bank(int sample_rate_hz) {
    const double mel_hi = mel_from_hz(sample_rate_hz / 2.0);
    std::array<double, kMelBands + 2> edges_hz;
    for (int j = 0; j < kMelBands + 2; ++j) {
        const double m = mel_hi * j / (kMelBands + 1);
        edges_hz[static_cast<std::size_t>(j)] = 700.0 * (std::pow(10.0, m / 2595.0) - 1.0);
    }
    std::vector<std::vector<std::pair<int, double>>> bank(kMelBands);
    const double bin_hz = static_cast<double>(sample_rate_hz) / kFftSize;
    for (int b = 0; b < kMelBands; ++b) {
        const double lo = edges_hz[static_cast<std::size_t>(b)];
        const double mid = edges_hz[static_cast<std::size_t>(b + 1)];
        const double hi = edges_hz[static_cast<std::size_t>(b + 2)];
        for (int k = 0; k <= kFftSize / 2; ++k) {
            const double f = k * bin_hz;
            double w = 0.0;
            if (f > lo && f < mid)
                w = (f - lo) / (mid - lo);
            else if (f >= mid && f < hi)
                w = (hi - f) / (hi - mid);
            if (w > 0.0) bank[static_cast<std::size_t>(b)].push_back({k, w});
        }
    }
    return bank;
}

} // namespace

double mel_from_hz(double f_hz) { return 2595.0 * std::log10(1.0 + f_hz / 700.0); }

std::vector<std::vector<double>> spectrogram(const AudioClip& clip) {
    const int n = static_cast<int>(clip.samples.size());
    if (n < kFftSize) throw DomainError("clip shorter than one analysis window");

    static thread_local int bank_rate = 0;
    static thread_local std::vector<std::vector<std::pair<int, double>>> bank;
    if (bank_rate != clip.sample_rate_hz) {
        bank = mel_bank(clip.sample_rate_hz);
        bank_rate = clip.sample_rate_hz;
    }

    std::vector<double> window(kFftSize);
    for (int i = 0; i < kFftSize; ++i)
        window[static_cast<std::size_t>(i)] =
            0.5 * (1.0 - std::cos(2.0 * constants::pi * i / kFftSize));

    const int frames = (n - kFftSize) / kHop + 1;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(frames));
    std::vector<std::complex<double>> buf(kFftSize);
    std::vector<double> mag(kFftSize / 2 + 1);
    for (int f = 0; f < frames; ++f) {
        const int off = f * kHop;
        for (int i = 0; i < kFftSize; ++i)
            buf[static_cast<std::size_t>(i)] = {
                clip.samples[static_cast<std::size_t>(off + i)] * window[static_cast<std::size_t>(i)],
                0.0};
        fft_inplace(buf);
        for (int k = 0; k <= kFftSize / 2; ++k)
            mag[static_cast<std::size_t>(k)] = std::abs(buf[static_cast<std::size_t>(k)]);
        std::vector<double>& row = out[static_cast<std::size_t>(f)];
        row.resize(kMelBands);
        for (int b = 0; b < kMelBands; ++b) {
            double acc = 0.0;
            for (const auto& [bin, w] : bank[static_cast<std::size_t>(b)])
                acc += w * mag[static_cast<std::size_t>(bin)];
            row[static_cast<std::size_t>(b)] = std::log10(std::max(acc, kLogFloor));
        }
    }
    return out;
}

std::vector<double> features(const AudioClip& clip) {
    const std::vector<std::vector<double>> spec = spectrogram(clip);
    const double nf = static_cast<double>(spec.size());
    std::vector<double> out(2 * kMelBands, 0.0);
    for (const std::vector<double>& row : spec)
        for (int b = 0; b < kMelBands; ++b) out[static_cast<std::size_t>(b)] += row[static_cast<std::size_t>(b)];
    for (int b = 0; b < kMelBands; ++b) out[static_cast<std::size_t>(b)] /= nf;
    for (const std::vector<double>& row : spec)
        for (int b = 0; b < kMelBands; ++b) {
            const double d = row[static_cast<std::size_t>(b)] - out[static_cast<std::size_t>(b)];
            out[static_cast<std::size_t>(kMelBands + b)] += d * d;
        }
    for (int b = 0; b < kMelBands; ++b)
        out[static_cast<std::size_t>(kMelBands + b)] =
            std::sqrt(out[static_cast<std::size_t>(kMelBands + b)] / nf);
    return out;
}

void TextureModel::validate() const {
    if (classes.empty()) throw DomainError("model has no classes");
    if (weights.size() != classes.size() || biases.size() != classes.size())
        throw DomainError("model weight count does not match class count");
    const std::size_t dim = feat_mean.size();
    if (dim == 0 || feat_sd.size() != dim) throw DomainError("model normalization stats malformed");
    for (const std::vector<double>& w : weights)
        if (w.size() != dim) throw DomainError("weight vector dimension mismatch");
}

namespace {

/// Center the band-mean block by its per-clip grand mean. A global gain
/// change shifts every band mean by the same constant and leaves band sds
/// untouched, so centered features are exactly gain invariant.
void center_features(std::vector<double>& f) {
    double g = 0.0;
    for (int b = 0; b < kMelBands; ++b) g += f[static_cast<std::size_t>(b)];
    g /= kMelBands;
    for (int b = 0; b < kMelBands; ++b) f[static_cast<std::size_t>(b)] -= g;
}

std::vector<double> normalized(const TextureModel& model, std::vector<double> f) {
    center_features(f);
    for (std::size_t j = 0; j < f.size(); ++j)
        f[j] = (f[j] - model.feat_mean[j]) / model.feat_sd[j];
    return f;
}

std::vector<double> decide_normalized(const TextureModel& model, const std::vector<double>& z) {
    std::vector<double> d(model.classes.size());
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double acc = model.biases[c];
        const std::vector<double>& w = model.weights[c];
        for (std::size_t j = 0; j < z.size(); ++j) acc += w[j] * z[j];
        d[c] = acc;
    }
    return d;
}

} // namespace

TextureModel train_classifier(const std::vector<std::pair<AudioClip, int>>& corpus,
                              const std::vector<SurfaceClass>& classes) {
    if (classes.size() < 2) throw DomainError("training needs at least 2 classes");
    std::map<int, std::size_t> id_to_index;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        classes[c].validate();
        if (!id_to_index.emplace(classes[c].class_id, c).second)
            throw DomainError("duplicate class id in class table");
    }

    std::vector<std::vector<double>> x;
    std::vector<std::size_t> label;
    std::vector<std::size_t> per_class(classes.size(), 0);
    x.reserve(corpus.size());
    for (const auto& [clip, class_id] : corpus) {
        const auto it = id_to_index.find(class_id);
        if (it == id_to_index.end()) throw DomainError("corpus label not present in class table");
        std::vector<double> f = features(preprocess(clip));
        center_features(f);
        x.push_back(std::move(f));
        label.push_back(it->second);
        ++per_class[it->second];
    }
    std::size_t populated = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (per_class[c] == 0) continue;
        ++populated;
        if (per_class[c] < 4) throw DomainError("every trained class needs at least 4 examples");
    }
    if (populated < 2) throw DomainError("training needs examples from at least 2 classes");

    const std::size_t n = x.size();
    const std::size_t dim = x.front().size();

    TextureModel model;
    model.classes = classes;
    model.feat_mean.assign(dim, 0.0);
    model.feat_sd.assign(dim, 0.0);
    for (const std::vector<double>& f : x)
        for (std::size_t j = 0; j < dim; ++j) model.feat_mean[j] += f[j];
    for (std::size_t j = 0; j < dim; ++j) model.feat_mean[j] /= static_cast<double>(n);
    for (const std::vector<double>& f : x)
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = f[j] - model.feat_mean[j];
            model.feat_sd[j] += d * d;
        }
    for (std::size_t j = 0; j < dim; ++j) {
        model.feat_sd[j] = std::sqrt(model.feat_sd[j] / static_cast<double>(n));
        if (model.feat_sd[j] < 1e-9) model.feat_sd[j] = 1.0; // constant feature: leave unscaled
    }

    std::vector<std::vector<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i].resize(dim);
        for (std::size_t j = 0; j < dim; ++j)
            z[i][j] = (x[i][j] - model.feat_mean[j]) / model.feat_sd[j];
    }

    // One-vs-rest hinge + L2, regularization constant C = 1, full-batch
    // subgradient descent on the sample-averaged objective
    //   f(w, b) = ||w||^2 / (2 C n) + (1/n) sum max(0, 1 - y (w.z + b)).
    constexpr double c_reg = 1.0;
    constexpr int max_epochs = 10000;
    constexpr double grad_tol = 1e-4;
    model.weights.assign(classes.size(), std::vector<double>(dim, 0.0));
    model.biases.assign(classes.size(), 0.0);
    std::vector<double> grad(dim);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (per_class[c] == 0) continue; // spare table slot: keep zero scorer
        std::vector<double>& w = model.weights[c];
        double& bias = model.biases[c];
        const double lambda = 1.0 / (c_reg * static_cast<double>(n));
        for (int epoch = 0; epoch < max_epochs; ++epoch) {
            for (std::size_t j = 0; j < dim; ++j) grad[j] = lambda * w[j];
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double y = label[i] == c ? 1.0 : -1.0;
                double m = bias;
                const std::vector<double>& zi = z[i];
                for (std::size_t j = 0; j < dim; ++j) m += w[j] * zi[j];
                if (y * m < 1.0) {
                    const double s = y / static_cast<double>(n);
                    for (std::size_t j = 0; j < dim; ++j) grad[j] -= s * zi[j];
                    grad_b -= s;
                }
            }
            double norm2 = grad_b * grad_b;
            for (std::size_t j = 0; j < dim; ++j) norm2 += grad[j] * grad[j];
            if (std::sqrt(norm2) < grad_tol) break;
            const double lr = 0.5 / (1.0 + epoch / 100.0);
            for (std::size_t j = 0; j < dim; ++j) w[j] -= lr * grad[j];
            bias -= lr * grad_b;
        }
    }
    return model;
}

std::vector<double> decision_values(const TextureModel& model, const AudioClip& clip) {
    model.validate();
    return decide_normalized(model, normalized(model, features(preprocess(clip))));
}

int classify(const TextureModel& model, const AudioClip& clip, double window_s) {
    model.validate();
    if (window_s < 0.2) throw DomainError("classification window must be at least 0.2 s");
    if (clip.samples.size() < static_cast<std::size_t>(kFftSize))
        throw DomainError("clip shorter than one analysis window");

    const AudioClip pre = preprocess(clip);
    const std::size_t total = pre.samples.size();
    std::size_t win_n = static_cast<std::size_t>(std::lround(window_s * pre.sample_rate_hz));
    if (win_n >= total) win_n = total;

    const std::size_t n_classes = model.classes.size();
    std::vector<int> votes(n_classes, 0);
    std::vector<double> summed(n_classes, 0.0);
    for (std::size_t off = 0; off + win_n <= total; off += win_n) {
        AudioClip w;
        w.sample_rate_hz = pre.sample_rate_hz;
        w.samples.assign(pre.samples.begin() + static_cast<std::ptrdiff_t>(off),
                         pre.samples.begin() + static_cast<std::ptrdiff_t>(off + win_n));
        if (w.samples.size() < static_cast<std::size_t>(kFftSize)) break;
        const std::vector<double> d =
            decide_normalized(model, normalized(model, features(w)));
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_classes; ++c)
            if (d[c] > d[best] ||
                (d[c] == d[best] &&
                 model.classes[c].class_id < model.classes[best].class_id))
                best = c;
        ++votes[best];
        for (std::size_t c = 0; c < n_classes; ++c) summed[c] += d[c];
    }

    std::size_t winner = 0;
    for (std::size_t c = 1; c < n_classes; ++c) {
        const bool better =
            votes[c] > votes[winner] ||
            (votes[c] == votes[winner] &&
             (summed[c] > summed[winner] ||
              (summed[c] == summed[winner] &&
               model.classes[c].class_id < model.classes[winner].class_id)));
        if (better) winner = c;
    }
    return model.classes[winner].class_id;
}

} // namespace imtk
