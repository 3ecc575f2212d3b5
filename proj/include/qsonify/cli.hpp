// cli.hpp
// Command-line front end: walk, grover, sonify and pipeline subcommands.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsonify/grover.hpp"
#include "qsonify/midiio.hpp"
#include "qsonify/sonify.hpp"
#include "qsonify/walk.hpp"

namespace qsonify::cli {

// Environment variable consulted for --seed when neither the command line
// nor a config file sets it.
inline constexpr const char* kSeedEnvVar = "QSONIFY_SEED";

struct SonifyOptions {
    SonifyMode mode = SonifyMode::raw;
    std::string scale = "c-harmonic-minor";
    std::optional<int> transpose;  // unset: per-source default
    double tempo_bpm = 120.0;
    double duration_ms = 250.0;
    int velocity = 100;
    int ticks_per_quarter = 480;
};

struct WalkCommand {
    WalkConfig config;
    std::string out_prefix = "walk";
    CsvPrecision precision = CsvPrecision::table;
};

struct GroverCommand {
    GroverConfig config;
    std::string out_prefix = "grover";
    CsvPrecision precision = CsvPrecision::table;
};

struct SonifyCommand {
    std::filesystem::path input;
    std::filesystem::path output = "song.mid";
    // Unset: taken from a JSON trace's kind; plain number files count as walk data.
    std::optional<DataSource> source;
    SonifyOptions options;
};

struct PipelineCommand {
    DataSource algorithm = DataSource::walk;
    WalkConfig walk;
    GroverConfig grover;
    SonifyOptions sonify;
    std::string out_prefix;
    CsvPrecision precision = CsvPrecision::table;
};

struct SonifySummary {
    std::size_t note_count = 0;
    int min_pitch = 0;
    int max_pitch = 0;
    double duration_seconds = 0.0;
};

// Each command computes everything first and writes files last; returns
// the paths written. Errors surface as exceptions.
std::vector<std::filesystem::path> run_walk_command(const WalkCommand& cmd, std::ostream& out);
std::vector<std::filesystem::path> run_grover_command(const GroverCommand& cmd, std::ostream& out);
std::vector<std::filesystem::path> run_sonify_command(const SonifyCommand& cmd, std::ostream& out);
std::vector<std::filesystem::path> run_pipeline_command(const PipelineCommand& cmd,
                                                        std::ostream& out);

SonifyConfig make_sonify_config(const SonifyOptions& opts, DataSource source);
SonifySummary summarize(const std::vector<NoteEvent>& events, const SonifyConfig& config);

// Parses args (args[0] is the program name) and runs the subcommand.
// Returns 0 iff every requested file was written; otherwise prints one
// diagnostic line to `err` and returns nonzero.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsonify::cli
