#include "qsonify/cli.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace qsonify::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Flat "key = value" lines; '#' and ';' start comments. Keys are long flag
// names without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const fs::path& path) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#' || t.front() == ';') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        std::string key = trim(std::string_view(t).substr(0, eq));
        std::string value = trim(std::string_view(t).substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

// Splices config-file entries in front of the user's flags so that explicit
// flags (parsed later, last value wins) override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::optional<std::string> config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path || args.size() < 2) return args;

    std::vector<std::string> expanded(args.begin(), args.begin() + 2);
    for (const auto& [key, value] : read_config_file(*config_path)) {
        if (key == "config") continue;
        expanded.push_back("--" + key + "=" + value);
    }
    expanded.insert(expanded.end(), args.begin() + 2, args.end());
    return expanded;
}

std::string seed_line(std::uint64_t seed) {
    return "seed=" + std::to_string(seed) + " generator=" + std::string(SeededSampler::kGeneratorId);
}

void echo_walk(std::ostream& out, const WalkConfig& c) {
    out << "walk: mode=" << to_string(c.mode) << " steps=" << c.steps << " sites=" << c.n_sites
        << " start=" << c.start << ' ' << seed_line(c.seed) << '\n';
}

void echo_grover(std::ostream& out, const GroverConfig& c) {
    out << "grover: marked=" << c.marked << " (" << outcome_label(static_cast<std::size_t>(c.marked))
        << ") iterations=" << c.iterations << " shots=" << c.shots_per_stage << ' '
        << seed_line(c.seed) << '\n';
}

void echo_sonify(std::ostream& out, const SonifyConfig& c, DataSource source,
                 const std::string& scale) {
    out << "sonify: source=" << to_string(source) << " mode=" << to_string(c.mode);
    if (c.mode == SonifyMode::quantized) out << " scale=" << scale;
    out << " transpose=" << c.transpose_semitones << " tempo=" << c.tempo_bpm
        << " dur-ms=" << c.note_duration_ms << " velocity=" << c.velocity
        << " tpq=" << c.ticks_per_quarter << '\n';
}

void echo_summary(std::ostream& out, const SonifySummary& s) {
    out << "notes=" << s.note_count << " pitch-range=" << s.min_pitch << ".." << s.max_pitch
        << " duration=" << s.duration_seconds << "s\n";
}

fs::path with_suffix(const std::string& prefix, std::string_view suffix) {
    return fs::path(prefix + std::string(suffix));
}

struct PendingFile {
    fs::path path;
    std::string contents;
};

std::vector<fs::path> write_all(const std::vector<PendingFile>& files, std::ostream& out) {
    std::vector<fs::path> written;
    for (const auto& f : files) {
        write_file(f.path, f.contents);
        out << "wrote " << f.path.string() << '\n';
        written.push_back(f.path);
    }
    return written;
}

std::string as_string(const std::vector<std::uint8_t>& bytes) {
    return std::string(bytes.begin(), bytes.end());
}

std::vector<PendingFile> walk_files(const WalkTrace& trace, const std::string& prefix,
                                    CsvPrecision precision) {
    return {{with_suffix(prefix, ".csv"), write_csv(trace, precision)},
            {with_suffix(prefix, ".json"), write_json(trace)}};
}

std::vector<PendingFile> grover_files(const TraceTable& table, const std::string& prefix,
                                      CsvPrecision precision) {
    return {{with_suffix(prefix, ".csv"), write_csv(table, precision)},
            {with_suffix(prefix, "_hist.csv"), write_histogram_csv(table, precision)},
            {with_suffix(prefix, ".json"), write_json(table)}};
}

std::vector<std::uint8_t> render_midi(const std::vector<int>& values, const SonifyOptions& opts,
                                      DataSource source, std::ostream& out) {
    const SonifyConfig config = make_sonify_config(opts, source);
    echo_sonify(out, config, source, opts.scale);
    const ScaleMap scale = ScaleMap::named(opts.scale);
    const auto events = to_note_events(values, config, scale);
    echo_summary(out, summarize(events, config));
    return write_smf({config.ticks_per_quarter, config.tempo_bpm, events, 0});
}

// ---------------------------------------------------------------- flag setup

void add_sonify_flags(CLI::App* app, SonifyOptions& opts) {
    app->add_option("--scale", opts.scale, "Scale for quantized mode")->capture_default_str();
    app->add_option("--transpose", opts.transpose,
                    "Semitone shift; default +36 for raw walk data, +12 for raw Grover data, "
                    "0 when quantized");
    app->add_option("--tempo", opts.tempo_bpm, "Tempo in BPM, one note per quarter")
        ->capture_default_str();
    app->add_option("--dur-ms", opts.duration_ms, "Fixed note length in milliseconds")
        ->capture_default_str();
    app->add_option("--velocity", opts.velocity, "Note-on velocity (1-127)")->capture_default_str();
    app->add_option("--tpq", opts.ticks_per_quarter, "MIDI ticks per quarter note")
        ->capture_default_str();
}

void add_walk_flags(CLI::App* app, WalkConfig& cfg) {
    app->add_option("--steps", cfg.steps, "Number of walk steps")->capture_default_str();
    app->add_option("--sites", cfg.n_sites, "Sites on the ring")->capture_default_str();
    app->add_option("--start", cfg.start, "Starting site")->capture_default_str();
}

void add_grover_flags(CLI::App* app, GroverConfig& cfg) {
    app->add_option("--marked", cfg.marked, "Marked value 0-7 (q3q2q1, 6 = 110)")
        ->capture_default_str();
    app->add_option("--iterations", cfg.iterations, "Oracle + diffuser repetitions")
        ->capture_default_str();
    app->add_option("--shots", cfg.shots_per_stage, "Measurements per stage")->capture_default_str();
}

void add_common_flags(CLI::App* app, std::uint64_t& seed, std::string& config_path) {
    app->add_option("--seed", seed, "Sampler seed")->envname(kSeedEnvVar)->capture_default_str();
    app->add_option("--config", config_path, "Flat key = value file supplying flag defaults");
}

}  // namespace

// --------------------------------------------------------------- commands

SonifyConfig make_sonify_config(const SonifyOptions& opts, DataSource source) {
    SonifyConfig c;
    c.mode = opts.mode;
    c.transpose_semitones = opts.transpose.value_or(SonifyConfig::default_transpose(source, opts.mode));
    c.tempo_bpm = opts.tempo_bpm;
    c.note_duration_ms = opts.duration_ms;
    c.velocity = opts.velocity;
    c.ticks_per_quarter = opts.ticks_per_quarter;
    c.validate();
    return c;
}

SonifySummary summarize(const std::vector<NoteEvent>& events, const SonifyConfig& config) {
    SonifySummary s;
    s.note_count = events.size();
    if (events.empty()) return s;
    const auto [lo, hi] = std::minmax_element(events.begin(), events.end(),
                                              [](const auto& a, const auto& b) { return a.pitch < b.pitch; });
    s.min_pitch = lo->pitch;
    s.max_pitch = hi->pitch;
    const double end_ticks = static_cast<double>(events.back().onset) + events.back().duration;
    s.duration_seconds = end_ticks / config.ticks_per_quarter * (60.0 / config.tempo_bpm);
    return s;
}

std::vector<fs::path> run_walk_command(const WalkCommand& cmd, std::ostream& out) {
    cmd.config.validate();
    echo_walk(out, cmd.config);
    const WalkTrace trace = run_walk(cmd.config);
    return write_all(walk_files(trace, cmd.out_prefix, cmd.precision), out);
}

std::vector<fs::path> run_grover_command(const GroverCommand& cmd, std::ostream& out) {
    cmd.config.validate();
    echo_grover(out, cmd.config);
    const TraceTable table = full_trace(cmd.config);
    return write_all(grover_files(table, cmd.out_prefix, cmd.precision), out);
}

std::vector<fs::path> run_sonify_command(const SonifyCommand& cmd, std::ostream& out) {
    std::vector<int> values;
    DataSource source = cmd.source.value_or(DataSource::walk);
    if (cmd.input.extension() == ".json") {
        JsonSequence seq = read_json_sequence(read_text_file(cmd.input));
        if (!cmd.source) source = seq.source;
        values = std::move(seq.values);
    } else {
        values = read_numbers(cmd.input).values;
    }
    out << "input: " << cmd.input.string() << " (" << values.size() << " values)\n";
    const auto bytes = render_midi(values, cmd.options, source, out);
    return write_all({{cmd.output, as_string(bytes)}}, out);
}

std::vector<fs::path> run_pipeline_command(const PipelineCommand& cmd, std::ostream& out) {
    const std::string prefix =
        cmd.out_prefix.empty() ? std::string(to_string(cmd.algorithm)) : cmd.out_prefix;
    std::vector<PendingFile> files;
    std::vector<int> values;
    if (cmd.algorithm == DataSource::walk) {
        cmd.walk.validate();
        echo_walk(out, cmd.walk);
        const WalkTrace trace = run_walk(cmd.walk);
        files = walk_files(trace, prefix, cmd.precision);
        values.assign(trace.positions.begin(), trace.positions.end());
    } else {
        cmd.grover.validate();
        echo_grover(out, cmd.grover);
        const TraceTable table = full_trace(cmd.grover);
        files = grover_files(table, prefix, cmd.precision);
        const auto flat = table.flattened_samples();
        values.assign(flat.begin(), flat.end());
    }
    const auto bytes = render_midi(values, cmd.sonify, cmd.algorithm, out);
    files.push_back({with_suffix(prefix, ".mid"), as_string(bytes)});
    return write_all(files, out);
}

// -------------------------------------------------------------------- run

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum walk and Grover search simulation with MIDI sonification", "qsonify"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string config_path;
    bool full_precision = false;

    // walk
    WalkCommand walk_cmd;
    std::string walk_mode = "quantum";
    auto* walk = app.add_subcommand("walk", "Simulate a coined walk on a ring and export the trace");
    walk->add_option("--mode", walk_mode, "quantum | classical")->capture_default_str();
    add_walk_flags(walk, walk_cmd.config);
    walk->add_option("--out-prefix", walk_cmd.out_prefix, "Writes PREFIX.csv and PREFIX.json")
        ->capture_default_str();
    walk->add_flag("--full-precision", full_precision, "Write CSV values at full precision");
    add_common_flags(walk, seed, config_path);

    // grover
    GroverCommand grover_cmd;
    auto* grover = app.add_subcommand("grover", "Sample every stage of the 3-qubit Grover circuit");
    add_grover_flags(grover, grover_cmd.config);
    grover->add_option("--out-prefix", grover_cmd.out_prefix,
                       "Writes PREFIX.csv, PREFIX_hist.csv and PREFIX.json")
        ->capture_default_str();
    grover->add_flag("--full-precision", full_precision, "Write CSV values at full precision");
    add_common_flags(grover, seed, config_path);

    // sonify
    SonifyCommand sonify_cmd;
    std::string sonify_mode = "raw";
    std::string sonify_source;
    std::string sonify_in;
    std::string sonify_out = "song.mid";
    auto* sonify = app.add_subcommand("sonify", "Turn a number file or trace JSON into a MIDI file");
    sonify->add_option("--in", sonify_in, "Number list (.txt) or trace (.json)")->required();
    sonify->add_option("--out", sonify_out, "Output .mid path")->capture_default_str();
    sonify->add_option("--mode", sonify_mode, "raw | quantized")->capture_default_str();
    sonify->add_option("--source", sonify_source,
                       "walk | grover; picks the default transpose. JSON traces carry their own, "
                       "number files default to walk");
    add_sonify_flags(sonify, sonify_cmd.options);
    sonify->add_option("--config", config_path, "Flat key = value file supplying flag defaults");

    // pipeline
    PipelineCommand pipe_cmd;
    std::string pipe_algorithm;
    std::string pipe_walk_mode = "quantum";
    std::string pipe_sonify_mode = "raw";
    auto* pipeline = app.add_subcommand("pipeline", "Simulate and sonify in one run with one seed");
    pipeline->add_option("--algorithm", pipe_algorithm, "walk | grover")->required();
    pipeline->add_option("--mode", pipe_walk_mode, "Walk mode: quantum | classical")
        ->capture_default_str();
    add_walk_flags(pipeline, pipe_cmd.walk);
    add_grover_flags(pipeline, pipe_cmd.grover);
    pipeline->add_option("--sonify-mode", pipe_sonify_mode, "raw | quantized")->capture_default_str();
    add_sonify_flags(pipeline, pipe_cmd.sonify);
    pipeline->add_option("--out-prefix", pipe_cmd.out_prefix,
                         "Output prefix (default: algorithm name)");
    pipeline->add_flag("--full-precision", full_precision, "Write CSV values at full precision");
    add_common_flags(pipeline, seed, config_path);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
        std::reverse(reversed.begin(), reversed.end());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << " (see --help)\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    const CsvPrecision precision = full_precision ? CsvPrecision::full : CsvPrecision::table;
    try {
        if (walk->parsed()) {
            walk_cmd.config.mode = parse_walk_mode(walk_mode);
            walk_cmd.config.seed = seed;
            walk_cmd.precision = precision;
            run_walk_command(walk_cmd, out);
        } else if (grover->parsed()) {
            grover_cmd.config.seed = seed;
            grover_cmd.precision = precision;
            run_grover_command(grover_cmd, out);
        } else if (sonify->parsed()) {
            sonify_cmd.input = sonify_in;
            sonify_cmd.output = sonify_out;
            sonify_cmd.options.mode = parse_sonify_mode(sonify_mode);
            if (!sonify_source.empty()) sonify_cmd.source = parse_data_source(sonify_source);
            run_sonify_command(sonify_cmd, out);
        } else if (pipeline->parsed()) {
            pipe_cmd.algorithm = parse_data_source(pipe_algorithm);
            pipe_cmd.walk.mode = parse_walk_mode(pipe_walk_mode);
            pipe_cmd.walk.seed = seed;
            pipe_cmd.grover.seed = seed;
            pipe_cmd.sonify.mode = parse_sonify_mode(pipe_sonify_mode);
            pipe_cmd.precision = precision;
            run_pipeline_command(pipe_cmd, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace qsonify::cli
