#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "imtk/errors.hpp"
#include "imtk/io.hpp"

#include "helpers.hpp"

using namespace imtk;
using testutil::scratch_path;

namespace {

std::size_t sweep_read_fails_at(const std::string& text) {
    const std::string path = scratch_path("bad_sweep.jsonl");
    write_text_file(path, text);
    try {
        read_sweep_jsonl(path);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("expected ParseError");
    return static_cast<std::size_t>(-1);
}

std::size_t mag_read_fails_at(const std::string& text) {
    const std::string path = scratch_path("bad_mag.jsonl");
    write_text_file(path, text);
    try {
        read_mag_jsonl(path);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("expected ParseError");
    return static_cast<std::size_t>(-1);
}

void push_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
}

void push_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

/// Minimal WAV bytes with adjustable header fields.
std::string wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                      std::uint32_t data_declared, std::uint32_t data_actual,
                      bool fmt_first = true, bool with_data = true) {
    std::string fmt = "fmt ";
    push_u32(fmt, 16);
    push_u16(fmt, format);
    push_u16(fmt, channels);
    push_u32(fmt, 44100);
    push_u32(fmt, 44100u * channels * bits / 8);
    push_u16(fmt, static_cast<std::uint16_t>(channels * bits / 8));
    push_u16(fmt, bits);

    std::string data = "data";
    push_u32(data, data_declared);
    data.append(data_actual, '\0');

    std::string body = "WAVE";
    if (with_data) {
        body += fmt_first ? fmt + data : data + fmt;
    } else {
        // Pad with an ignorable chunk so the file passes the minimum-size
        // gate and genuinely ends without a data chunk.
        std::string filler = "LIST";
        push_u32(filler, 8);
        filler.append(8, '\0');
        body += fmt + filler;
    }
    std::string out = "RIFF";
    push_u32(out, static_cast<std::uint32_t>(body.size()));
    out += body;
    return out;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("text files") {
    const std::string path = scratch_path("note.txt");
    write_text_file(path, "line one\nline two\n");
    CHECK(read_text_file(path) == "line one\nline two\n");
    CHECK_THROWS_AS(read_text_file(scratch_path("missing.txt")), ParseError);
    CHECK_THROWS_AS(write_text_file("/nonexistent_dir_zz/x.txt", "a"), ParseError);
}

TEST_CASE("sweep JSONL") {
    SUBCASE("round trip is exact") {
        const auto frames = synth_sweep_frames(MaterialPixel{}, FingerModel{},
                                               NoiseConfig{}, 3, 41);
        const std::string path = scratch_path("sweep.jsonl");
        write_sweep_jsonl(path, frames);
        const auto back = read_sweep_jsonl(path);
        REQUIRE(back.size() == frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i) {
            CHECK(back[i].timestamp_s == frames[i].timestamp_s);
            CHECK(back[i].grid.f_hz == frames[i].grid.f_hz);
            CHECK(back[i].s11_db == frames[i].s11_db);
        }
    }
    SUBCASE("parse errors carry the line number") {
        const std::string good =
            R"({"t": 0.0, "f_hz": [1e8, 2e8], "s11_db": [-1.0, -2.0]})";
        CHECK(sweep_read_fails_at(good + "\n{oops\n") == 2);
        CHECK(sweep_read_fails_at(R"({"f_hz": [1e8], "s11_db": [-1.0]})" "\n") == 1);
        CHECK(sweep_read_fails_at(R"({"t": 0.0, "f_hz": [1e8, 2e8], "s11_db": [-1.0]})" "\n") == 1);
        CHECK(sweep_read_fails_at(R"({"t": 0.0, "f_hz": [], "s11_db": []})" "\n") == 1);
        CHECK(sweep_read_fails_at(good + "\n" + good + "\n" +
                                  R"({"t": 0.0, "f_hz": [1e8, "x"], "s11_db": [-1, -2]})" "\n") == 3);
        CHECK_THROWS_AS(read_sweep_jsonl(scratch_path("absent.jsonl")), ParseError);
    }
}

TEST_CASE("magnetometer JSONL") {
    SUBCASE("round trip is exact") {
        const auto trace = synth_magnetometer_trace(1e-3, MagnetPixel{}, 2.5e-3, 1.5,
                                                    NoiseConfig{}, 17);
        const std::string path = scratch_path("trace.jsonl");
        write_mag_jsonl(path, trace);
        const auto back = read_mag_jsonl(path);
        REQUIRE(back.size() == trace.size());
        for (std::size_t i = 0; i < trace.size(); ++i) {
            CHECK(back[i].t_s == trace[i].t_s);
            CHECK(back[i].b_t == trace[i].b_t);
        }
    }
    SUBCASE("parse errors carry the line number") {
        CHECK(mag_read_fails_at(R"({"t": 0.0, "b_t": [1e-5, 2e-5]})" "\n") == 1);
        CHECK(mag_read_fails_at(R"({"t": 0.0, "b_t": [1, 2, 3, 4]})" "\n") == 1);
        CHECK(mag_read_fails_at(R"({"b_t": [1e-5, 2e-5, 3e-5]})" "\n") == 1);
        CHECK(mag_read_fails_at(R"({"t": 0.0, "b_t": [1e-5, null, 3e-5]})" "\n") == 1);
        CHECK(mag_read_fails_at(R"({"t": 0.0, "b_t": [1,2,3]})" "\n" "nonsense\n") == 2);
    }
}

TEST_CASE("WAV audio") {
    SUBCASE("round trip within one quantization step") {
        const AudioClip clip = synth_swipe(default_class_table()[4], 0.15, 0.3, 23);
        const std::string path = scratch_path("swipe.wav");
        write_wav(path, clip);
        const AudioClip back = read_wav(path);
        CHECK(back.sample_rate_hz == clip.sample_rate_hz);
        REQUIRE(back.samples.size() == clip.samples.size());
        for (std::size_t i = 0; i < clip.samples.size(); ++i)
            CHECK(std::abs(back.samples[i] - clip.samples[i]) <= 1.0 / 32767.0);
        // Requantizing the read-back signal is lossless.
        const std::string path2 = scratch_path("swipe2.wav");
        write_wav(path2, back);
        CHECK(read_wav(path2).samples == back.samples);
    }
    SUBCASE("header validation") {
        const std::string p = scratch_path("bad.wav");
        write_text_file(p, "hello");
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("not a RIFF/WAVE"), ParseError);
        write_text_file(p, wav_bytes(1, 2, 16, 8, 8));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("only mono"), ParseError);
        write_text_file(p, wav_bytes(1, 1, 8, 8, 8));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("only 16-bit"), ParseError);
        write_text_file(p, wav_bytes(3, 1, 16, 8, 8));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("only PCM"), ParseError);
        write_text_file(p, wav_bytes(1, 1, 16, 100, 4));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("truncated WAV chunk"), ParseError);
        write_text_file(p, wav_bytes(1, 1, 16, 8, 8, /*fmt_first=*/false));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("precedes fmt"), ParseError);
        write_text_file(p, wav_bytes(1, 1, 16, 0, 0, true, /*with_data=*/false));
        CHECK_THROWS_WITH_AS(read_wav(p), doctest::Contains("no data chunk"), ParseError);
    }
    SUBCASE("a valid crafted file reads back") {
        const std::string p = scratch_path("ok.wav");
        std::string bytes = wav_bytes(1, 1, 16, 4, 4);
        // Patch the two samples to 0x4000 and 0xC000 (0.5 and -0.5 scaled).
        bytes[bytes.size() - 4] = 0x00;
        bytes[bytes.size() - 3] = 0x40;
        bytes[bytes.size() - 2] = 0x00;
        bytes[bytes.size() - 1] = static_cast<char>(0xC0);
        write_text_file(p, bytes);
        const AudioClip c = read_wav(p);
        REQUIRE(c.samples.size() == 2);
        CHECK(c.samples[0] > 0.49);
        CHECK(c.samples[0] < 0.51);
        CHECK(c.samples[1] < -0.49);
        CHECK(c.samples[1] > -0.51);
    }
}

TEST_CASE("plan JSON") {
    const CodePlan& p = testutil::plan_v3();
    const std::string text = plan_to_json(p);
    SUBCASE("canonical round trip") {
        const CodePlan q = plan_from_json(text);
        CHECK(plan_to_json(q) == text);
        CHECK(q.allocation.electrical_bits == p.allocation.electrical_bits);
        CHECK(q.vote_frames == p.vote_frames);
        CHECK(q.electrical.sigma0_s_per_m == p.electrical.sigma0_s_per_m);
        CHECK(q.electrical_thresholds_db == p.electrical_thresholds_db);
        CHECK(q.magnetic_thresholds_t == p.magnetic_thresholds_t);
        REQUIRE(q.surface_classes.size() == p.surface_classes.size());
        for (std::size_t i = 0; i < p.surface_classes.size(); ++i) {
            CHECK(q.surface_classes[i].class_id == p.surface_classes[i].class_id);
            CHECK(q.surface_classes[i].texture == p.surface_classes[i].texture);
            CHECK(q.surface_classes[i].spatial_wavelength_m ==
                  p.surface_classes[i].spatial_wavelength_m);
        }
        CHECK_NOTHROW(q.validate());
    }
    SUBCASE("file round trip") {
        const std::string path = scratch_path("plan.json");
        save_plan(path, p);
        CHECK(plan_to_json(load_plan(path)) == text);
    }
    SUBCASE("kind and version are enforced") {
        std::string wrong_kind = text;
        const std::size_t at = wrong_kind.find("imtk_code_plan");
        REQUIRE(at != std::string::npos);
        wrong_kind.replace(at, 14, "imtk_mystery_x");
        CHECK_THROWS_AS(plan_from_json(wrong_kind), ParseError);

        std::string wrong_version = text;
        const std::size_t vat = wrong_version.find("\"schema_version\": 1");
        REQUIRE(vat != std::string::npos);
        wrong_version.replace(vat, 19, "\"schema_version\": 9");
        CHECK_THROWS_AS(plan_from_json(wrong_version), ParseError);

        CHECK_THROWS_AS(plan_from_json("{not json"), ParseError);
        CHECK_THROWS_AS(plan_from_json("{}"), ParseError);
    }
}

TEST_CASE("model JSON") {
    const TextureModel& m = testutil::model16();
    const std::string text = model_to_json(m);
    SUBCASE("canonical round trip preserves decisions") {
        const TextureModel q = model_from_json(text);
        CHECK(model_to_json(q) == text);
        CHECK(q.classes.size() == m.classes.size());
        CHECK(q.weights == m.weights);
        CHECK(q.biases == m.biases);
        CHECK(q.feat_mean == m.feat_mean);
        CHECK(q.feat_sd == m.feat_sd);
        const AudioClip clip = synth_swipe(default_class_table()[5], 0.15, 0.5, 61);
        CHECK(classify(q, clip, 10.0) == classify(m, clip, 10.0));
    }
    SUBCASE("file round trip") {
        const std::string path = scratch_path("model.json");
        save_model(path, m);
        CHECK(model_to_json(load_model(path)) == text);
    }
    SUBCASE("document kinds do not cross") {
        CHECK_THROWS_AS(model_from_json(plan_to_json(testutil::plan_v3())), ParseError);
        CHECK_THROWS_AS(plan_from_json(text), ParseError);
    }
}

TEST_CASE("trial report JSON") {
    const CodePlan& p = testutil::plan_v3();
    const TextureModel& m = testutil::model16();
    const TrialReport a = run_monte_carlo(p, m, NoiseConfig::zero(), 5, 3);
    const TrialReport b = run_monte_carlo(p, m, NoiseConfig::zero(), 5, 3);
    const std::string ja = report_to_json(a);
    CHECK(ja == report_to_json(b));
    CHECK(ja.find("\"imtk_trial_report\"") != std::string::npos);
    // Zero-noise config pins an infinite audio SNR, which JSON cannot carry.
    CHECK(ja.find("\"audio_snr_db\": \"disabled\"") != std::string::npos);
    TrialReport c = a;
    c.config.audio_snr_db = 20.0;
    CHECK(report_to_json(c).find("\"audio_snr_db\": 20.0") != std::string::npos);
}

TEST_CASE("trial CSV") {
    std::vector<TrialRecord> records = {
        {0, 4095, 4095, true, true, true},
        {1, 128, 130, true, false, true},
        {2, 7, -1, false, true, false},
    };
    const std::string path = scratch_path("trials.csv");
    write_trial_csv(path, records);
    CHECK(read_text_file(path) ==
          "trial,true_word,decoded_word,electrical_ok,magnetic_ok,surface_ok\n"
          "0,4095,4095,1,1,1\n"
          "1,128,130,1,0,1\n"
          "2,7,-1,0,1,0\n");
}

TEST_CASE("word maps") {
    const std::string path = scratch_path("words.csv");
    write_text_file(path, "word_value,label\n0,blank\n128,unit-a\n4095,full\n");
    const auto map = load_word_map(path);
    REQUIRE(map.size() == 3);
    CHECK(map[0] == std::pair<long, std::string>(0, "blank"));
    CHECK(map[1] == std::pair<long, std::string>(128, "unit-a"));
    CHECK(map[2] == std::pair<long, std::string>(4095, "full"));

    // The header is optional: bare rows parse too.
    write_text_file(path, "12,twelve\n");
    CHECK(load_word_map(path).size() == 1);

    write_text_file(path, "word_value,label\nnope,x\n");
    try {
        load_word_map(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("malformed word value") != std::string::npos);
    }
    write_text_file(path, "word_value,label\n3,\n");
    try {
        load_word_map(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("empty label") != std::string::npos);
    }
    write_text_file(path, "word_value,label\n77\n");
    CHECK_THROWS_AS(load_word_map(path), ParseError);
    write_text_file(path, "word_value,label\n-3,neg\n");
    CHECK_THROWS_AS(load_word_map(path), ParseError);
}

TEST_CASE("corpus manifests") {
    const std::string path = scratch_path("manifest.csv");
    std::vector<CorpusEntry> entries = {
        {"clips/a.wav", 0, "smooth", "high"},
        {"clips/b.wav", 7, "grippy", "low"},
    };
    write_manifest(path, entries);
    const auto back = load_manifest(path);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(back[i].path == entries[i].path);
        CHECK(back[i].class_id == entries[i].class_id);
        CHECK(back[i].texture == entries[i].texture);
        CHECK(back[i].energy == entries[i].energy);
    }

    write_text_file(path, "file,id,tex,en\nclips/a.wav,0,smooth,high\n");
    try {
        load_manifest(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    write_text_file(path, "");
    try {
        load_manifest(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 0);
    }
    write_text_file(path, "path,class_id,texture,energy\nclips/a.wav,0,smooth\n");
    try {
        load_manifest(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("expected 4 fields") != std::string::npos);
    }
    write_text_file(path, "path,class_id,texture,energy\nclips/a.wav,zero,smooth,high\n");
    try {
        load_manifest(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("malformed class id") != std::string::npos);
    }
}

} // TEST_SUITE
