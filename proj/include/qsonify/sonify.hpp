// sonify.hpp
// Maps integer sequences (walk sites, Grover outcomes) to MIDI note events.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsonify {

class PitchRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct ScaleMap {
    std::string name;
    int tonic_pitch = 36;
    std::vector<int> degree_offsets;
    // Number of octaves the value domain covers; values run over
    // [0, octaves * degree_offsets.size()).
    int octaves = 2;

    // C harmonic minor from C2: C D Eb F G Ab B, two octaves, 14 values.
    static ScaleMap c_harmonic_minor();
    // Looks up a built-in scale by name; throws std::invalid_argument.
    static ScaleMap named(std::string_view name);

    std::size_t span() const { return degree_offsets.size() * static_cast<std::size_t>(octaves); }
    void validate() const;
};

enum class SonifyMode { raw, quantized };
enum class DataSource { walk, grover };

std::string_view to_string(SonifyMode mode);
SonifyMode parse_sonify_mode(std::string_view text);
std::string_view to_string(DataSource source);
DataSource parse_data_source(std::string_view text);

struct NoteEvent {
    int pitch = 0;
    int velocity = 100;
    std::uint32_t onset = 0;     // ticks
    std::uint32_t duration = 0;  // ticks

    bool operator==(const NoteEvent&) const = default;
};

struct SonifyConfig {
    SonifyMode mode = SonifyMode::raw;
    int transpose_semitones = 0;
    double tempo_bpm = 120.0;
    double note_duration_ms = 250.0;
    int velocity = 100;
    int ticks_per_quarter = 480;

    // Raw Grover data sits an octave up, raw walk data three octaves up.
    // Quantized data takes its register from the scale tonic.
    static int default_transpose(DataSource source, SonifyMode mode);

    void validate() const;
    // note_duration_ms on the tempo grid, rounded to the nearest tick.
    std::uint32_t duration_ticks() const;
};

// value + transpose; throws PitchRangeError outside 0..127.
int raw_to_pitch(int value, int transpose_semitones);

// tonic + 12 * (value / degrees) + offsets[value % degrees]; throws
// PitchRangeError when value is outside the scale span or the pitch leaves
// 0..127.
int quantize(int value, const ScaleMap& scale);

// One note per quarter note, constant velocity and duration. Throws
// std::invalid_argument on empty input, PitchRangeError on overflow.
std::vector<NoteEvent> to_note_events(std::span<const int> values, const SonifyConfig& config,
                                      const std::optional<ScaleMap>& scale = std::nullopt);

// Minimal signed step between neighbours on a ring of `ring` sites, in
// (-ring/2, ring/2]. Throws std::invalid_argument for fewer than 2 values.
std::vector<int> melodic_interval_profile(std::span<const int> values, int ring = 14);

}  // namespace qsonify
