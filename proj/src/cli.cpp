#include "imtk/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "imtk/calibration.hpp"
#include "imtk/codec.hpp"
#include "imtk/errors.hpp"
#include "imtk/io.hpp"
#include "imtk/rng.hpp"
#include "imtk/simulate.hpp"

namespace imtk {

namespace {

double parse_number(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("malformed " + what + ": '" + text + "'");
    return v;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        values.push_back(parse_number(field, what));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return values;
}

BitAllocation parse_alloc(const std::string& text) {
    const std::vector<double> v = parse_number_list(text, "bit allocation");
    if (v.size() != 3) throw ConfigError("bit allocation must be three integers: E,M,S");
    BitAllocation alloc;
    alloc.electrical_bits = static_cast<int>(v[0]);
    alloc.magnetic_bits = static_cast<int>(v[1]);
    alloc.surface_bits = static_cast<int>(v[2]);
    for (std::size_t i = 0; i < 3; ++i)
        if (v[i] != std::floor(v[i])) throw ConfigError("bit allocation fields must be integers");
    return alloc;
}

NoiseConfig noise_preset(const std::string& name) {
    if (name == "zero") return NoiseConfig::zero();
    if (name == "default") return NoiseConfig{};
    if (name == "pessimistic") return NoiseConfig::pessimistic_distance();
    throw ConfigError("unknown noise preset: " + name);
}

void apply_overrides(NoiseConfig& noise, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override must be field=value: '" + kv + "'");
        set_noise_field(noise, kv.substr(0, eq),
                        parse_number(kv.substr(eq + 1), "override value"));
    }
}

std::vector<SurfaceClass> table_choice(const std::string& name) {
    if (name == "full") return default_class_table();
    if (name == "demonstrated") return demonstrated_class_table();
    throw ConfigError("unknown class table: " + name + " (use full or demonstrated)");
}

long lookup_label(const std::vector<std::pair<long, std::string>>& map,
                  const std::string& label) {
    for (const auto& [value, name] : map)
        if (name == label) return value;
    throw ConfigError("label not present in the word map: " + label);
}

const std::string* lookup_word(const std::vector<std::pair<long, std::string>>& map, long value) {
    for (const auto& [v, name] : map)
        if (v == value) return &name;
    return nullptr;
}

struct PlanOpts {
    std::string alloc = "5,3,4";
    std::string out;
    std::string table = "full";
    int vote_frames = 30;
    PlanBounds bounds;
};

void cmd_plan(const PlanOpts& o) {
    const CodePlan p = plan(parse_alloc(o.alloc), o.bounds, table_choice(o.table), o.vote_frames);
    std::printf("electrical: %d states / %d bits\n", p.electrical.n_states,
                p.allocation.electrical_bits);
    std::printf("magnetic: %d states / %d bits\n", p.magnetic.n_states,
                p.allocation.magnetic_bits);
    std::printf("surface: %d classes / %d bits\n", 1 << p.allocation.surface_bits,
                p.allocation.surface_bits);
    std::printf("word size: %d bits / %ld words\n", p.allocation.total_bits(),
                1L << p.allocation.total_bits());
    for (const std::string& w : p.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (!o.out.empty()) {
        save_plan(o.out, p);
        std::printf("plan: %s\n", o.out.c_str());
    }
}

struct EncodeOpts {
    std::string plan_path;
    long word = -1;
    std::string label;
    std::string map_path;
    std::string graphite_path;
    std::string magnetite_path;
};

void cmd_encode(const EncodeOpts& o) {
    const CodePlan p = load_plan(o.plan_path);
    std::vector<std::pair<long, std::string>> map;
    if (!o.map_path.empty()) map = load_word_map(o.map_path);

    long value = o.word;
    if (!o.label.empty()) {
        if (o.map_path.empty()) throw ConfigError("--label requires --map");
        value = lookup_label(map, o.label);
    }
    const SymbolWord w = SymbolWord::from_value(value, p.allocation);
    const MaterialSpec spec = encode(w, p);
    const SurfaceClass& cls = p.surface_classes[static_cast<std::size_t>(w.s_s)];

    std::printf("word: %ld\n", value);
    if (const std::string* name = lookup_word(map, value))
        std::printf("label: %s\n", name->c_str());
    std::printf("electrical: state %d / conductivity %.6e S/m\n", w.s_e,
                spec.target_conductivity_s_per_m);
    if (!o.graphite_path.empty()) {
        const CalibrationTable t =
            load_table(o.graphite_path, PropertyKind::conductivity_s_per_m);
        std::printf("graphite: %.4f weight fraction\n",
                    fraction_for_property(t, spec.target_conductivity_s_per_m));
    }
    std::printf("magnetic: state %d / reading %.6e T / remanence %.6e T\n", w.s_m,
                spec.target_reading_t, spec.target_remanence_t);
    if (!o.magnetite_path.empty()) {
        const CalibrationTable t = load_table(o.magnetite_path, PropertyKind::remanence_t);
        std::printf("magnetite: %.4f weight fraction\n",
                    fraction_for_property(t, spec.target_remanence_t));
    }
    std::printf("surface: class %d / %s / %s\n", spec.surface_class_id,
                to_string(cls.texture).c_str(), to_string(cls.energy).c_str());
}

struct SynthOpts {
    std::string plan_path;
    long word = 0;
    std::string out_prefix;
    std::string channel = "all";
    std::uint64_t seed = 1;
    int frames = 0;
    std::string noise = "zero";
    std::vector<std::string> sets;
    double speed = kNominalSwipeSpeed;
    double swipe_duration = kTrialSwipeDuration;
    double trace_duration = kTrialTraceDuration;
};

void cmd_synth(const SynthOpts& o) {
    const bool do_e = o.channel == "all" || o.channel == "electrical";
    const bool do_m = o.channel == "all" || o.channel == "magnetic";
    const bool do_s = o.channel == "all" || o.channel == "surface";
    if (!do_e && !do_m && !do_s) throw ConfigError("unknown channel: " + o.channel);

    const CodePlan p = load_plan(o.plan_path);
    NoiseConfig noise = noise_preset(o.noise);
    apply_overrides(noise, o.sets);
    noise.validate();

    const SymbolWord w = SymbolWord::from_value(o.word, p.allocation);
    const MaterialSpec spec = encode(w, p);
    const int n_frames = o.frames > 0 ? o.frames : p.vote_frames;

    if (do_e) {
        MaterialPixel pixel;
        pixel.resistivity_ohm_m = 1.0 / spec.target_conductivity_s_per_m;
        const std::vector<SweepFrame> frames = synth_sweep_frames(
            pixel, FingerModel{}, noise, n_frames, derive_seed(o.seed, 1));
        const std::string path = o.out_prefix + ".sweep.jsonl";
        write_sweep_jsonl(path, frames);
        std::printf("sweep: %s (%d frames)\n", path.c_str(), n_frames);
    }
    if (do_m) {
        RandomStream rs(derive_seed(o.seed, 5));
        const double distance =
            rs.uniform(noise.contact_distance_lo_m, noise.contact_distance_hi_m);
        const std::vector<MagSample> trace =
            synth_magnetometer_trace(spec.target_remanence_t, MagnetPixel{}, distance,
                                     o.trace_duration, noise, derive_seed(o.seed, 2));
        const std::string path = o.out_prefix + ".mag.jsonl";
        write_mag_jsonl(path, trace);
        std::printf("mag: %s (%zu samples)\n", path.c_str(), trace.size());
    }
    if (do_s) {
        const SurfaceClass& cls = p.surface_classes[static_cast<std::size_t>(w.s_s)];
        AudioClip clip = synth_swipe(cls, o.speed, o.swipe_duration, derive_seed(o.seed, 3));
        clip = add_audio_noise(clip, noise.audio_snr_db, derive_seed(o.seed, 4));
        const std::string path = o.out_prefix + ".wav";
        write_wav(path, clip);
        std::printf("wav: %s (%.2f s)\n", path.c_str(), clip.duration_s());
    }
}

struct DecodeOpts {
    std::string plan_path;
    std::string model_path;
    std::string sweep_path;
    std::string mag_path;
    std::string wav_path;
    std::string map_path;
};

void cmd_decode(const DecodeOpts& o) {
    if (o.sweep_path.empty() && o.mag_path.empty() && o.wav_path.empty())
        throw ConfigError("nothing to decode: give --sweep, --mag and/or --wav");
    if (!o.wav_path.empty() && o.model_path.empty())
        throw ConfigError("surface decoding requires --model");

    const CodePlan p = load_plan(o.plan_path);
    TextureModel model;
    if (!o.model_path.empty()) model = load_model(o.model_path);

    std::vector<SweepFrame> frames;
    std::vector<MagSample> trace;
    AudioClip clip;
    if (!o.sweep_path.empty()) {
        frames = read_sweep_jsonl(o.sweep_path);
        std::printf("electrical: state %d\n", decode_electrical(frames, p));
    }
    if (!o.mag_path.empty()) {
        trace = read_mag_jsonl(o.mag_path);
        const int m = decode_magnetic(trace, p);
        if (m == kNoDetection)
            std::printf("magnetic: no detection\n");
        else
            std::printf("magnetic: state %d\n", m);
    }
    if (!o.wav_path.empty()) {
        clip = read_wav(o.wav_path);
        std::printf("surface: class %d\n", decode_surface(model, clip));
    }

    if (!o.sweep_path.empty() && !o.mag_path.empty() && !o.wav_path.empty()) {
        const SymbolWord w = decode_word(frames, trace, clip, p, model);
        const long value = w.value(p.allocation);
        std::printf("word: %ld\n", value);
        if (!o.map_path.empty()) {
            const auto map = load_word_map(o.map_path);
            if (const std::string* name = lookup_word(map, value))
                std::printf("label: %s\n", name->c_str());
        }
    }
}

struct TrainOpts {
    std::string out;
    std::uint64_t seed = 7;
    std::string table = "full";
    int clips = 40;
    double duration = 0.5;
    double snr = 20.0;
    double holdout = 0.3;
};

void cmd_train(const TrainOpts& o) {
    const std::vector<SurfaceClass> classes = table_choice(o.table);
    const auto corpus =
        make_training_corpus(classes, o.clips, o.duration, o.snr, o.seed);

    // Per-class split: the leading clips train, the trailing ones evaluate.
    const int train_n = o.clips - static_cast<int>(std::floor(o.holdout * o.clips));
    std::vector<std::pair<AudioClip, int>> train_set, eval_set;
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int j = 0; j < o.clips; ++j) {
            const auto& entry = corpus[c * static_cast<std::size_t>(o.clips) +
                                       static_cast<std::size_t>(j)];
            (j < train_n ? train_set : eval_set).push_back(entry);
        }

    const TextureModel model = train_classifier(train_set, classes);

    long hits = 0;
    for (const auto& [clip, label] : eval_set)
        if (classify(model, clip, clip.duration_s()) == label) ++hits;
    const long total = static_cast<long>(eval_set.size());

    std::printf("corpus: %zu classes x %d clips\n", classes.size(), o.clips);
    std::printf("held-out accuracy: %.3f (%ld/%ld)\n",
                total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 1.0, hits,
                total);
    save_model(o.out, model);
    std::printf("model: %s\n", o.out.c_str());
}

struct SimOpts {
    std::string plan_path;
    std::string model_path;
    long trials = 1000;
    std::uint64_t seed = 1;
    std::string noise = "default";
    std::vector<std::string> sets;
    int threads = 1;
    std::string out;
    std::string csv;
    std::string sweep_field;
    std::string sweep_values;
};

void print_tally(const char* name, const ChannelTally& t) {
    std::printf("%s: errors %ld / rate %.6f / wilson_hi %.6f\n", name, t.errors, t.rate,
                t.wilson_hi);
}

void cmd_simulate(const SimOpts& o) {
    const CodePlan p = load_plan(o.plan_path);
    const TextureModel model = load_model(o.model_path);
    NoiseConfig noise = noise_preset(o.noise);
    apply_overrides(noise, o.sets);
    noise.validate();

    if (!o.sweep_field.empty()) {
        if (!o.out.empty())
            throw ConfigError("report JSON is only written for single runs; use --csv for sweeps");
        const std::vector<double> values =
            parse_number_list(o.sweep_values, "sweep value");
        const auto series =
            sensitivity_sweep(p, model, noise, o.sweep_field, values, o.trials, o.seed,
                              o.threads);
        std::printf("sweep: %s over %zu values, %ld trials each\n", o.sweep_field.c_str(),
                    values.size(), o.trials);
        std::string csv_text = o.sweep_field +
                               ",electrical_rate,magnetic_rate,surface_rate,word_rate,"
                               "word_wilson_hi\n";
        for (const auto& [value, report] : series) {
            std::printf("%s=%g electrical=%.6f magnetic=%.6f surface=%.6f word=%.6f\n",
                        o.sweep_field.c_str(), value, report.electrical.rate,
                        report.magnetic.rate, report.surface.rate, report.word.rate);
            char row[256];
            std::snprintf(row, sizeof row, "%.10g,%.6f,%.6f,%.6f,%.6f,%.6f\n", value,
                          report.electrical.rate, report.magnetic.rate, report.surface.rate,
                          report.word.rate, report.word.wilson_hi);
            csv_text += row;
        }
        if (!o.csv.empty()) {
            write_text_file(o.csv, csv_text);
            std::printf("csv: %s\n", o.csv.c_str());
        }
        return;
    }

    std::vector<TrialRecord> records;
    const TrialReport report = run_monte_carlo(p, model, noise, o.trials, o.seed, o.threads,
                                               o.csv.empty() ? nullptr : &records);
    std::printf("trials: %ld\n", report.trials);
    std::printf("seed: %llu\n", static_cast<unsigned long long>(report.rng_seed));
    print_tally("electrical", report.electrical);
    print_tally("magnetic", report.magnetic);
    print_tally("surface", report.surface);
    print_tally("word", report.word);
    if (!o.out.empty()) {
        write_text_file(o.out, report_to_json(report));
        std::printf("report: %s\n", o.out.c_str());
    }
    if (!o.csv.empty()) {
        write_trial_csv(o.csv, records);
        std::printf("csv: %s\n", o.csv.c_str());
    }
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Passive interactive-material toolkit: plan symbol codes over the\n"
                 "electrical, magnetic and surface channels, derive fabrication targets,\n"
                 "synthesize sensor traces, decode them back and measure robustness."};
    app.require_subcommand(1);

    PlanOpts plan_o;
    CLI::App* plan_cmd =
        app.add_subcommand("plan", "Build a code plan and print the capacity table");
    plan_cmd->add_option("--alloc", plan_o.alloc, "Bits per channel as E,M,S")
        ->capture_default_str();
    plan_cmd->add_option("--out", plan_o.out, "Write the plan JSON here");
    plan_cmd->add_option("--table", plan_o.table, "Surface class table: full|demonstrated")
        ->capture_default_str();
    plan_cmd->add_option("--vote-frames", plan_o.vote_frames, "Sweep frames per decode vote")
        ->capture_default_str();
    plan_cmd->add_option("--electrical-lo", plan_o.bounds.electrical.lo,
                         "Electrical range floor, ohm*m");
    plan_cmd->add_option("--electrical-hi", plan_o.bounds.electrical.hi,
                         "Electrical range ceiling, ohm*m");
    plan_cmd->add_option("--electrical-margin", plan_o.bounds.electrical.margin,
                         "Electrical adjacent-state ratio");
    plan_cmd->add_option("--magnetic-lo", plan_o.bounds.magnetic.lo,
                         "Magnetic reading floor, T");
    plan_cmd->add_option("--magnetic-hi", plan_o.bounds.magnetic.hi,
                         "Magnetic reading ceiling, T");
    plan_cmd->add_option("--magnetic-margin", plan_o.bounds.magnetic.margin,
                         "Magnetic adjacent-state ratio");
    plan_cmd->callback([&] { cmd_plan(plan_o); });

    EncodeOpts enc_o;
    CLI::App* enc_cmd =
        app.add_subcommand("encode", "Map a word to fabrication targets and wt% recipes");
    enc_cmd->add_option("--plan", enc_o.plan_path, "Plan JSON")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* enc_word = enc_cmd->add_option("--word", enc_o.word, "Word value to encode");
    enc_cmd->add_option("--label", enc_o.label, "Word label to encode (needs --map)")
        ->excludes(enc_word);
    enc_cmd->add_option("--map", enc_o.map_path, "Word map CSV: word_value,label")
        ->check(CLI::ExistingFile);
    enc_cmd->add_option("--graphite", enc_o.graphite_path,
                        "Graphite conductivity calibration CSV")
        ->check(CLI::ExistingFile);
    enc_cmd->add_option("--magnetite", enc_o.magnetite_path,
                        "Magnetite remanence calibration CSV")
        ->check(CLI::ExistingFile);
    enc_cmd->callback([&] {
        if (enc_o.word < 0 && enc_o.label.empty())
            throw ConfigError("give --word or --label");
        cmd_encode(enc_o);
    });

    SynthOpts syn_o;
    CLI::App* syn_cmd =
        app.add_subcommand("synth", "Synthesize sensor traces for an encoded word");
    syn_cmd->add_option("--plan", syn_o.plan_path, "Plan JSON")
        ->required()
        ->check(CLI::ExistingFile);
    syn_cmd->add_option("--word", syn_o.word, "Word value")->required();
    syn_cmd->add_option("--out", syn_o.out_prefix,
                        "Output prefix (.sweep.jsonl/.mag.jsonl/.wav)")
        ->required();
    syn_cmd->add_option("--channel", syn_o.channel, "all|electrical|magnetic|surface")
        ->capture_default_str();
    syn_cmd->add_option("--seed", syn_o.seed, "Master seed")->capture_default_str();
    syn_cmd->add_option("--frames", syn_o.frames, "Sweep frames (default: plan vote window)");
    syn_cmd->add_option("--noise", syn_o.noise, "Noise preset: zero|default|pessimistic")
        ->capture_default_str();
    syn_cmd->add_option("--set", syn_o.sets, "Noise override field=value (repeatable)");
    syn_cmd->add_option("--speed", syn_o.speed, "Swipe speed, m/s")->capture_default_str();
    syn_cmd->add_option("--swipe-duration", syn_o.swipe_duration, "Swipe clip length, s")
        ->capture_default_str();
    syn_cmd->add_option("--trace-duration", syn_o.trace_duration,
                        "Magnetometer trace length, s")
        ->capture_default_str();
    syn_cmd->callback([&] { cmd_synth(syn_o); });

    DecodeOpts dec_o;
    CLI::App* dec_cmd = app.add_subcommand("decode", "Decode sensor traces back to states");
    dec_cmd->add_option("--plan", dec_o.plan_path, "Plan JSON")
        ->required()
        ->check(CLI::ExistingFile);
    dec_cmd->add_option("--model", dec_o.model_path, "Texture model JSON")
        ->check(CLI::ExistingFile);
    dec_cmd->add_option("--sweep", dec_o.sweep_path, "Sweep trace JSONL")
        ->check(CLI::ExistingFile);
    dec_cmd->add_option("--mag", dec_o.mag_path, "Magnetometer trace JSONL")
        ->check(CLI::ExistingFile);
    dec_cmd->add_option("--wav", dec_o.wav_path, "Swipe audio WAV")->check(CLI::ExistingFile);
    dec_cmd->add_option("--map", dec_o.map_path, "Word map CSV for the label line")
        ->check(CLI::ExistingFile);
    dec_cmd->callback([&] { cmd_decode(dec_o); });

    TrainOpts trn_o;
    CLI::App* trn_cmd = app.add_subcommand(
        "train", "Train the texture classifier on a synthetic swipe corpus");
    trn_cmd->add_option("--out", trn_o.out, "Write the model JSON here")->required();
    trn_cmd->add_option("--seed", trn_o.seed, "Corpus seed")->capture_default_str();
    trn_cmd->add_option("--table", trn_o.table, "Class table: full|demonstrated")
        ->capture_default_str();
    trn_cmd->add_option("--clips-per-class", trn_o.clips, "Clips per class")
        ->capture_default_str()
        ->check(CLI::Range(4, 1000));
    trn_cmd->add_option("--duration", trn_o.duration, "Clip length, s")->capture_default_str();
    trn_cmd->add_option("--snr", trn_o.snr, "Audio SNR during synthesis, dB")
        ->capture_default_str();
    trn_cmd->add_option("--holdout", trn_o.holdout, "Held-out fraction per class")
        ->capture_default_str()
        ->check(CLI::Range(0.05, 0.5));
    trn_cmd->callback([&] { cmd_train(trn_o); });

    SimOpts sim_o;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo error rates under a touch/sensor noise model");
    sim_cmd->add_option("--plan", sim_o.plan_path, "Plan JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--model", sim_o.model_path, "Texture model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--trials", sim_o.trials, "Trials per run")->capture_default_str();
    sim_cmd->add_option("--seed", sim_o.seed, "Master seed")->capture_default_str();
    sim_cmd->add_option("--noise", sim_o.noise, "Noise preset: zero|default|pessimistic")
        ->capture_default_str();
    sim_cmd->add_option("--set", sim_o.sets, "Noise override field=value (repeatable)");
    sim_cmd->add_option("--threads", sim_o.threads, "Worker threads")->capture_default_str();
    sim_cmd->add_option("--out", sim_o.out, "Write the report JSON here");
    sim_cmd->add_option("--csv", sim_o.csv,
                        "Per-trial records CSV (single run) or rate series CSV (sweep)");
    sim_cmd->add_option("--sweep-field", sim_o.sweep_field,
                        "Noise field to sweep instead of a single run");
    sim_cmd->add_option("--sweep-values", sim_o.sweep_values, "Sweep values, comma separated");
    sim_cmd->callback([&] {
        if (sim_o.sweep_field.empty() != sim_o.sweep_values.empty())
            throw ConfigError("--sweep-field and --sweep-values go together");
        cmd_simulate(sim_o);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UnreachableError& e) {
        std::fprintf(stderr, "error: %s (nearest achievable: %g)\n", e.what(), e.nearest());
        return 3;
    } catch (const ParseError& e) {
        if (e.line() > 0)
            std::fprintf(stderr, "error: line %zu: %s\n", e.line(), e.what());
        else
            std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const DecodeError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.channel().c_str(), e.what());
        return 4;
    } catch (const PlanningError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.channel().c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        // ConfigError, DomainError and anything unplanned: configuration class.
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

} // namespace imtk
