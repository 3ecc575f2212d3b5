// midiio.hpp
// File formats: Standard MIDI File (format 0) output, CSV and JSON exports of
// walk traces and Grover tallies, and plain-text number list input.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsonify/grover.hpp"
#include "qsonify/sonify.hpp"
#include "qsonify/walk.hpp"

namespace qsonify {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------- SMF

struct SmfDocument {
    int ticks_per_quarter = 480;
    double tempo_bpm = 120.0;
    std::vector<NoteEvent> events;  // sorted by onset
    int channel = 0;
};

// Microseconds per quarter note, rounded; throws std::invalid_argument if it
// does not fit the 24-bit tempo field.
std::uint32_t tempo_microseconds(double tempo_bpm);

// Appends `value` as a MIDI variable-length quantity (max 0x0FFFFFFF).
void append_vlq(std::vector<std::uint8_t>& out, std::uint32_t value);

// Format 0, one track: set-tempo meta, then note-on/note-off pairs with
// explicit status bytes, then end-of-track. Note-offs sort before note-ons
// on the same tick. Throws std::invalid_argument on unsorted events or
// out-of-range fields.
std::vector<std::uint8_t> write_smf(const SmfDocument& doc);

// ------------------------------------------------------------- CSV / JSON

enum class CsvPrecision { table, full };  // table = 2 decimals

// Header "stage,000,...,111", one row of sampled proportions per stage.
std::string write_csv(const TraceTable& table, CsvPrecision precision = CsvPrecision::table);

// Long-format histogram data per stage:
// stage,outcome,label,count,proportion,exact
std::string write_histogram_csv(const TraceTable& table,
                                CsvPrecision precision = CsvPrecision::table);

// Header "step,position" plus "p0..p{n-1}" when distributions were recorded.
std::string write_csv(const WalkTrace& trace, CsvPrecision precision = CsvPrecision::table);

// JSON documents carry "kind", "format_version" and a "metadata" object with
// the generator id, seed and full config.
std::string write_json(const WalkTrace& trace);
std::string write_json(const TraceTable& table);

WalkTrace read_walk_trace_json(std::string_view text);
TraceTable read_trace_table_json(std::string_view text);

// The note sequence carried by a trace JSON document: walk positions, or the
// Grover samples of every stage concatenated in stage order.
struct JsonSequence {
    DataSource source;
    std::vector<int> values;
};
JsonSequence read_json_sequence(std::string_view text);

// ----------------------------------------------------------- number files

struct NumberFile {
    std::vector<int> values;
    std::string source_path;
};

// Whitespace-separated integers; blank lines are skipped. Errors name the
// offending line. Throws FormatError on bad tokens or when no values exist.
NumberFile parse_numbers(std::string_view text, std::string source_path = "<memory>");
NumberFile read_numbers(const std::filesystem::path& path);

std::string write_numbers(std::span<const int> values);

// --------------------------------------------------------------- file I/O

std::string read_text_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace qsonify
