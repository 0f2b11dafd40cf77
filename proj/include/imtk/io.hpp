#pragma once

#include <string>
#include <utility>
#include <vector>

#include "imtk/codec.hpp"
#include "imtk/simulate.hpp"

namespace imtk {

/// Whole-file text helpers. Throw ParseError when the file cannot be read
/// or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Sweep traces as JSON lines: {"t": <s>, "f_hz": [...], "s11_db": [...]}.
/// Readers throw ParseError with the offending 1-based line number.
void write_sweep_jsonl(const std::string& path, const std::vector<SweepFrame>& frames);
std::vector<SweepFrame> read_sweep_jsonl(const std::string& path);

/// Magnetometer traces as JSON lines: {"t": <s>, "b_t": [bx, by, bz]}.
void write_mag_jsonl(const std::string& path, const std::vector<MagSample>& trace);
std::vector<MagSample> read_mag_jsonl(const std::string& path);

/// WAV, PCM 16-bit mono. Writing quantizes to int16 with clamping; reading
/// validates the header (RIFF/WAVE, PCM, mono, 16-bit) and throws
/// ParseError otherwise.
void write_wav(const std::string& path, const AudioClip& clip);
AudioClip read_wav(const std::string& path);

/// Versioned canonical JSON for plans and models: fixed key order, fixed
/// 2-space indentation, shortest round-trip doubles. load(save(x)) is
/// byte-identical to save(x).
std::string plan_to_json(const CodePlan& plan);
CodePlan plan_from_json(const std::string& text);
void save_plan(const std::string& path, const CodePlan& plan);
CodePlan load_plan(const std::string& path);

std::string model_to_json(const TextureModel& model);
TextureModel model_from_json(const std::string& text);
void save_model(const std::string& path, const TextureModel& model);
TextureModel load_model(const std::string& path);

/// Monte Carlo report as canonical JSON (seed and config echoed, no
/// wall-clock fields, so identical runs serialize identically).
std::string report_to_json(const TrialReport& report);

/// Per-trial CSV matrix: trial,true_word,decoded_word,electrical_ok,
/// magnetic_ok,surface_ok.
void write_trial_csv(const std::string& path, const std::vector<TrialRecord>& records);

/// Word/label bindings: CSV word_value,label (no header). Labels must be
/// unique; lookups are exact.
std::vector<std::pair<long, std::string>> load_word_map(const std::string& path);

/// Swipe corpus manifest: CSV path,class_id,texture,energy with header.
struct CorpusEntry {
    std::string path;
    int class_id;
    std::string texture;
    std::string energy;
};
std::vector<CorpusEntry> load_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<CorpusEntry>& entries);

} // namespace imtk
