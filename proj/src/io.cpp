#include "imtk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "imtk/errors.hpp"

namespace imtk {

using ordered_json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path, 0);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write file: " + path, 0);
    f << content;
    if (!f) throw ParseError("write failed: " + path, 0);
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

ordered_json parse_json_line(const std::string& line, std::size_t lineno) {
    try {
        return ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON line: ") + e.what(), lineno);
    }
}

double require_number(const ordered_json& j, const char* key, std::size_t lineno) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError(std::string("missing numeric field '") + key + "'", lineno);
    return j[key].get<double>();
}

const ordered_json& require_array(const ordered_json& j, const char* key, std::size_t lineno) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("missing array field '") + key + "'", lineno);
    return j[key];
}

} // namespace

void write_sweep_jsonl(const std::string& path, const std::vector<SweepFrame>& frames) {
    std::ostringstream out;
    for (const SweepFrame& f : frames) {
        ordered_json j;
        j["t"] = f.timestamp_s;
        j["f_hz"] = f.grid.f_hz;
        j["s11_db"] = f.s11_db;
        out << j.dump() << '\n';
    }
    write_text_file(path, out.str());
}

std::vector<SweepFrame> read_sweep_jsonl(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    std::vector<SweepFrame> frames;
    std::size_t lineno = 0;
    for (const std::string& line : lines) {
        ++lineno;
        if (line.empty()) continue;
        const ordered_json j = parse_json_line(line, lineno);
        SweepFrame f;
        f.timestamp_s = require_number(j, "t", lineno);
        for (const ordered_json& v : require_array(j, "f_hz", lineno)) {
            if (!v.is_number()) throw ParseError("non-numeric frequency", lineno);
            f.grid.f_hz.push_back(v.get<double>());
        }
        for (const ordered_json& v : require_array(j, "s11_db", lineno)) {
            if (!v.is_number()) throw ParseError("non-numeric S11 value", lineno);
            f.s11_db.push_back(v.get<double>());
        }
        if (f.grid.f_hz.size() != f.s11_db.size() || f.grid.f_hz.empty())
            throw ParseError("f_hz and s11_db must be equal-length non-empty arrays", lineno);
        frames.push_back(std::move(f));
    }
    return frames;
}

void write_mag_jsonl(const std::string& path, const std::vector<MagSample>& trace) {
    std::ostringstream out;
    for (const MagSample& s : trace) {
        ordered_json j;
        j["t"] = s.t_s;
        j["b_t"] = {s.b_t[0], s.b_t[1], s.b_t[2]};
        out << j.dump() << '\n';
    }
    write_text_file(path, out.str());
}

std::vector<MagSample> read_mag_jsonl(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    std::vector<MagSample> trace;
    std::size_t lineno = 0;
    for (const std::string& line : lines) {
        ++lineno;
        if (line.empty()) continue;
        const ordered_json j = parse_json_line(line, lineno);
        MagSample s;
        s.t_s = require_number(j, "t", lineno);
        const ordered_json& b = require_array(j, "b_t", lineno);
        if (b.size() != 3) throw ParseError("b_t must have exactly 3 components", lineno);
        for (std::size_t i = 0; i < 3; ++i) {
            if (!b[i].is_number()) throw ParseError("non-numeric field component", lineno);
            s.b_t[i] = b[i].get<double>();
        }
        trace.push_back(s);
    }
    return trace;
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>((v >> 8) & 0xFF));
    s.push_back(static_cast<char>((v >> 16) & 0xFF));
    s.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

std::uint32_t get_u32(const std::string& s, std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3])) << 24);
}

std::uint16_t get_u16(const std::string& s, std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(s[off]) |
                                      (static_cast<unsigned char>(s[off + 1]) << 8));
}

} // namespace

void write_wav(const std::string& path, const AudioClip& clip) {
    const std::uint32_t n = static_cast<std::uint32_t>(clip.samples.size());
    const std::uint32_t data_bytes = n * 2;
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz));
    put_u32(out, static_cast<std::uint32_t>(clip.sample_rate_hz) * 2);
    put_u16(out, 2);  // block align
    put_u16(out, 16); // bits per sample
    out += "data";
    put_u32(out, data_bytes);
    for (double s : clip.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        const int v = static_cast<int>(std::lround(clamped * 32767.0));
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
    write_text_file(path, out);
}

AudioClip read_wav(const std::string& path) {
    const std::string raw = read_text_file(path);
    if (raw.size() < 44 || raw.compare(0, 4, "RIFF") != 0 || raw.compare(8, 4, "WAVE") != 0)
        throw ParseError("not a RIFF/WAVE file: " + path, 0);

    AudioClip clip;
    bool have_fmt = false;
    std::size_t off = 12;
    while (off + 8 <= raw.size()) {
        const std::string id = raw.substr(off, 4);
        const std::uint32_t size = get_u32(raw, off + 4);
        const std::size_t body = off + 8;
        if (body + size > raw.size()) throw ParseError("truncated WAV chunk: " + id, 0);
        if (id == "fmt ") {
            if (size < 16) throw ParseError("malformed fmt chunk", 0);
            if (get_u16(raw, body) != 1) throw ParseError("only PCM WAV is supported", 0);
            if (get_u16(raw, body + 2) != 1) throw ParseError("only mono WAV is supported", 0);
            clip.sample_rate_hz = static_cast<int>(get_u32(raw, body + 4));
            if (get_u16(raw, body + 14) != 16)
                throw ParseError("only 16-bit WAV is supported", 0);
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw ParseError("WAV data chunk precedes fmt", 0);
            clip.samples.reserve(size / 2);
            for (std::size_t i = 0; i + 1 < size; i += 2) {
                const std::int16_t v = static_cast<std::int16_t>(get_u16(raw, body + i));
                clip.samples.push_back(static_cast<double>(v) / 32767.0);
            }
            return clip;
        }
        off = body + size + (size % 2);
    }
    throw ParseError("WAV file has no data chunk", 0);
}

namespace {

constexpr int kSchemaVersion = 1;

ordered_json class_to_json(const SurfaceClass& c) {
    ordered_json j;
    j["class_id"] = c.class_id;
    j["texture"] = to_string(c.texture);
    j["energy"] = to_string(c.energy);
    j["spatial_wavelength_m"] = c.spatial_wavelength_m;
    j["amplitude"] = c.amplitude;
    return j;
}

SurfaceClass class_from_json(const ordered_json& j) {
    SurfaceClass c;
    try {
        c.class_id = j.at("class_id").get<int>();
        c.texture = texture_from_string(j.at("texture").get<std::string>());
        c.energy = energy_from_string(j.at("energy").get<std::string>());
        c.spatial_wavelength_m = j.at("spatial_wavelength_m").get<double>();
        c.amplitude = j.at("amplitude").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed surface class: ") + e.what(), 0);
    }
    return c;
}

ordered_json parse_document(const std::string& text, const char* expected_kind) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON document: ") + e.what(), 0);
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion)
        throw ParseError("unsupported or missing schema_version", 0);
    if (!j.contains("kind") || j["kind"] != expected_kind)
        throw ParseError(std::string("document is not a ") + expected_kind, 0);
    return j;
}

} // namespace

std::string plan_to_json(const CodePlan& plan) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "imtk_code_plan";
    j["allocation"] = {{"electrical_bits", plan.allocation.electrical_bits},
                       {"magnetic_bits", plan.allocation.magnetic_bits},
                       {"surface_bits", plan.allocation.surface_bits}};
    j["vote_frames"] = plan.vote_frames;
    j["electrical"] = {{"sigma0_s_per_m", plan.electrical.sigma0_s_per_m},
                       {"ratio", plan.electrical.ratio},
                       {"n_states", plan.electrical.n_states},
                       {"thresholds_db", plan.electrical_thresholds_db}};
    j["magnetic"] = {{"b_lo_t", plan.magnetic.b_lo_t},
                     {"ratio", plan.magnetic.ratio},
                     {"n_states", plan.magnetic.n_states},
                     {"thresholds_t", plan.magnetic_thresholds_t}};
    ordered_json classes = ordered_json::array();
    for (const SurfaceClass& c : plan.surface_classes) classes.push_back(class_to_json(c));
    j["surface_classes"] = std::move(classes);
    j["warnings"] = plan.warnings;
    return j.dump(2) + "\n";
}

CodePlan plan_from_json(const std::string& text) {
    const ordered_json j = parse_document(text, "imtk_code_plan");
    CodePlan plan;
    try {
        const ordered_json& a = j.at("allocation");
        plan.allocation.electrical_bits = a.at("electrical_bits").get<int>();
        plan.allocation.magnetic_bits = a.at("magnetic_bits").get<int>();
        plan.allocation.surface_bits = a.at("surface_bits").get<int>();
        plan.vote_frames = j.at("vote_frames").get<int>();
        const ordered_json& e = j.at("electrical");
        plan.electrical.sigma0_s_per_m = e.at("sigma0_s_per_m").get<double>();
        plan.electrical.ratio = e.at("ratio").get<double>();
        plan.electrical.n_states = e.at("n_states").get<int>();
        plan.electrical_thresholds_db = e.at("thresholds_db").get<std::vector<double>>();
        const ordered_json& m = j.at("magnetic");
        plan.magnetic.b_lo_t = m.at("b_lo_t").get<double>();
        plan.magnetic.ratio = m.at("ratio").get<double>();
        plan.magnetic.n_states = m.at("n_states").get<int>();
        plan.magnetic_thresholds_t = m.at("thresholds_t").get<std::vector<double>>();
        for (const ordered_json& c : j.at("surface_classes"))
            plan.surface_classes.push_back(class_from_json(c));
        plan.warnings = j.at("warnings").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed plan document: ") + e.what(), 0);
    }
    try {
        plan.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid plan document: ") + e.what(), 0);
    }
    return plan;
}

void save_plan(const std::string& path, const CodePlan& plan) {
    write_text_file(path, plan_to_json(plan));
}

CodePlan load_plan(const std::string& path) { return plan_from_json(read_text_file(path)); }

std::string model_to_json(const TextureModel& model) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "imtk_texture_model";
    ordered_json classes = ordered_json::array();
    for (const SurfaceClass& c : model.classes) classes.push_back(class_to_json(c));
    j["classes"] = std::move(classes);
    j["feat_mean"] = model.feat_mean;
    j["feat_sd"] = model.feat_sd;
    j["weights"] = model.weights;
    j["biases"] = model.biases;
    return j.dump(2) + "\n";
}

TextureModel model_from_json(const std::string& text) {
    const ordered_json j = parse_document(text, "imtk_texture_model");
    TextureModel model;
    try {
        for (const ordered_json& c : j.at("classes"))
            model.classes.push_back(class_from_json(c));
        model.feat_mean = j.at("feat_mean").get<std::vector<double>>();
        model.feat_sd = j.at("feat_sd").get<std::vector<double>>();
        model.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        model.biases = j.at("biases").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what(), 0);
    }
    try {
        model.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid model document: ") + e.what(), 0);
    }
    return model;
}

void save_model(const std::string& path, const TextureModel& model) {
    write_text_file(path, model_to_json(model));
}

TextureModel load_model(const std::string& path) { return model_from_json(read_text_file(path)); }

namespace {

ordered_json tally_to_json(const ChannelTally& t) {
    ordered_json j;
    j["errors"] = t.errors;
    j["rate"] = t.rate;
    j["wilson_lo"] = t.wilson_lo;
    j["wilson_hi"] = t.wilson_hi;
    return j;
}

ordered_json noise_to_json(const NoiseConfig& c) {
    ordered_json j;
    j["force_mean_n"] = c.force_mean_n;
    j["force_sd_n"] = c.force_sd_n;
    j["contact_radius_jitter"] = c.contact_radius_jitter;
    j["s11_noise_db"] = c.s11_noise_db;
    j["contact_distance_lo_m"] = c.contact_distance_lo_m;
    j["contact_distance_hi_m"] = c.contact_distance_hi_m;
    j["mag_noise_t"] = c.mag_noise_t;
    // JSON has no infinity; "disabled" stands for an infinite SNR.
    if (std::isinf(c.audio_snr_db))
        j["audio_snr_db"] = "disabled";
    else
        j["audio_snr_db"] = c.audio_snr_db;
    return j;
}

} // namespace

std::string report_to_json(const TrialReport& report) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "imtk_trial_report";
    j["trials"] = report.trials;
    j["rng_seed"] = report.rng_seed;
    j["config"] = noise_to_json(report.config);
    j["electrical"] = tally_to_json(report.electrical);
    j["magnetic"] = tally_to_json(report.magnetic);
    j["surface"] = tally_to_json(report.surface);
    j["word"] = tally_to_json(report.word);
    return j.dump(2) + "\n";
}

void write_trial_csv(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "trial,true_word,decoded_word,electrical_ok,magnetic_ok,surface_ok\n";
    for (const TrialRecord& r : records)
        out << r.trial << ',' << r.true_word << ',' << r.decoded_word << ','
            << (r.electrical_ok ? 1 : 0) << ',' << (r.magnetic_ok ? 1 : 0) << ','
            << (r.surface_ok ? 1 : 0) << '\n';
    write_text_file(path, out.str());
}

std::vector<std::pair<long, std::string>> load_word_map(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    std::vector<std::pair<long, std::string>> map;
    std::size_t lineno = 0;
    for (const std::string& line : lines) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line == "word_value,label") continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected word_value,label", lineno);
        const std::string num = line.substr(0, comma);
        char* end = nullptr;
        const long value = std::strtol(num.c_str(), &end, 10);
        if (end == num.c_str() || *end != '\0' || value < 0)
            throw ParseError("malformed word value", lineno);
        const std::string label = line.substr(comma + 1);
        if (label.empty()) throw ParseError("empty label", lineno);
        map.emplace_back(value, label);
    }
    return map;
}

std::vector<CorpusEntry> load_manifest(const std::string& path) {
    const std::vector<std::string> lines = split_lines(read_text_file(path));
    if (lines.empty() || lines.front() != "path,class_id,texture,energy")
        throw ParseError("expected header path,class_id,texture,energy", lines.empty() ? 0 : 1);
    std::vector<CorpusEntry> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty()) continue;
        const std::size_t lineno = i + 1;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 4) throw ParseError("expected 4 fields", lineno);
        CorpusEntry e;
        e.path = fields[0];
        char* end = nullptr;
        e.class_id = static_cast<int>(std::strtol(fields[1].c_str(), &end, 10));
        if (end == fields[1].c_str() || *end != '\0')
            throw ParseError("malformed class id", lineno);
        e.texture = fields[2];
        e.energy = fields[3];
        entries.push_back(std::move(e));
    }
    return entries;
}

void write_manifest(const std::string& path, const std::vector<CorpusEntry>& entries) {
    std::ostringstream out;
    out << "path,class_id,texture,energy\n";
    for (const CorpusEntry& e : entries)
        out << e.path << ',' << e.class_id << ',' << e.texture << ',' << e.energy << '\n';
    write_text_file(path, out.str());
}

} // namespace imtk
