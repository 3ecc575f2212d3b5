#include "qsonify/sonify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsonify {

namespace {

constexpr int kMaxPitch = 127;

int checked_pitch(long long pitch, std::string_view what) {
    if (pitch < 0 || pitch > kMaxPitch) {
        throw PitchRangeError(std::string(what) + " gives MIDI pitch " + std::to_string(pitch) +
                              ", outside 0..127");
    }
    return static_cast<int>(pitch);
}

}  // namespace

ScaleMap ScaleMap::c_harmonic_minor() {
    return {"c-harmonic-minor", 36, {0, 2, 3, 5, 7, 8, 11}, 2};
}

ScaleMap ScaleMap::named(std::string_view name) {
    if (name == "c-harmonic-minor") return c_harmonic_minor();
    throw std::invalid_argument("unknown scale '" + std::string(name) + "'");
}

void ScaleMap::validate() const {
    if (degree_offsets.empty()) throw std::invalid_argument("scale has no degrees");
    if (octaves < 1) throw std::invalid_argument("scale must span at least one octave");
    int prev = -1;
    for (int d : degree_offsets) {
        if (d < 0 || d > 11 || d <= prev)
            throw std::invalid_argument("scale offsets must be strictly increasing in [0, 11]");
        prev = d;
    }
    checked_pitch(tonic_pitch, "scale tonic");
}

std::string_view to_string(SonifyMode mode) { return mode == SonifyMode::raw ? "raw" : "quantized"; }

SonifyMode parse_sonify_mode(std::string_view text) {
    if (text == "raw") return SonifyMode::raw;
    if (text == "quantized") return SonifyMode::quantized;
    throw std::invalid_argument("unknown sonify mode '" + std::string(text) + "'");
}

std::string_view to_string(DataSource source) { return source == DataSource::walk ? "walk" : "grover"; }

DataSource parse_data_source(std::string_view text) {
    if (text == "walk") return DataSource::walk;
    if (text == "grover") return DataSource::grover;
    throw std::invalid_argument("unknown data source '" + std::string(text) + "'");
}

int SonifyConfig::default_transpose(DataSource source, SonifyMode mode) {
    if (mode == SonifyMode::quantized) return 0;
    return source == DataSource::grover ? 12 : 36;
}

void SonifyConfig::validate() const {
    if (!(tempo_bpm > 0.0) || !std::isfinite(tempo_bpm))
        throw std::invalid_argument("tempo must be positive");
    if (!(note_duration_ms > 0.0) || !std::isfinite(note_duration_ms))
        throw std::invalid_argument("note duration must be positive");
    if (velocity < 1 || velocity > 127) throw std::invalid_argument("velocity must be in 1..127");
    if (ticks_per_quarter < 1 || ticks_per_quarter > 0x7FFF)
        throw std::invalid_argument("ticks per quarter must be in 1..32767");
    if (duration_ticks() == 0)
        throw std::invalid_argument("note duration is shorter than one tick at this tempo");
}

std::uint32_t SonifyConfig::duration_ticks() const {
    const double ms_per_quarter = 60000.0 / tempo_bpm;
    const double ticks = std::round(note_duration_ms / ms_per_quarter * ticks_per_quarter);
    if (ticks > static_cast<double>(0x0FFFFFFF))
        throw std::invalid_argument("note duration too long for a MIDI delta time");
    return static_cast<std::uint32_t>(ticks);
}

int raw_to_pitch(int value, int transpose_semitones) {
    return checked_pitch(static_cast<long long>(value) + transpose_semitones,
                         "value " + std::to_string(value));
}

int quantize(int value, const ScaleMap& scale) {
    if (value < 0 || static_cast<std::size_t>(value) >= scale.span()) {
        throw PitchRangeError("value " + std::to_string(value) + " outside the " +
                              std::to_string(scale.span()) + "-step span of scale " + scale.name);
    }
    const auto degrees = static_cast<int>(scale.degree_offsets.size());
    const long long pitch = static_cast<long long>(scale.tonic_pitch) + 12LL * (value / degrees) +
                            scale.degree_offsets[static_cast<std::size_t>(value % degrees)];
    return checked_pitch(pitch, "value " + std::to_string(value));
}

std::vector<NoteEvent> to_note_events(std::span<const int> values, const SonifyConfig& config,
                                      const std::optional<ScaleMap>& scale) {
    if (values.empty()) throw std::invalid_argument("no values to sonify");
    config.validate();
    const ScaleMap effective_scale = scale.value_or(ScaleMap::c_harmonic_minor());
    if (config.mode == SonifyMode::quantized) effective_scale.validate();

    const std::uint32_t duration = config.duration_ticks();
    const auto spacing = static_cast<std::uint64_t>(config.ticks_per_quarter);
    if (spacing * (values.size() - 1) > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("sequence too long for 32-bit tick onsets");

    std::vector<NoteEvent> events;
    events.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int pitch = config.mode == SonifyMode::raw
                              ? raw_to_pitch(values[i], config.transpose_semitones)
                              : raw_to_pitch(quantize(values[i], effective_scale),
                                             config.transpose_semitones);
        events.push_back({pitch, config.velocity, static_cast<std::uint32_t>(i * spacing), duration});
    }
    return events;
}

std::vector<int> melodic_interval_profile(std::span<const int> values, int ring) {
    if (values.size() < 2) throw std::invalid_argument("interval profile needs at least 2 values");
    if (ring < 1) throw std::invalid_argument("ring size must be positive");
    std::vector<int> steps;
    steps.reserve(values.size() - 1);
    for (std::size_t i = 1; i < values.size(); ++i) {
        int d = ((values[i] - values[i - 1]) % ring + ring) % ring;
        if (2 * d > ring) d -= ring;
        steps.push_back(d);
    }
    return steps;
}

}  // namespace qsonify
