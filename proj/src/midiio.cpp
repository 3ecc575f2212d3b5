#include "qsonify/midiio.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace qsonify {

using nlohmann::json;

namespace {

constexpr int kJsonFormatVersion = 1;
constexpr std::string_view kBitOrder = "q3q2q1";

void append_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    append_u16(out, v >> 16);
    append_u16(out, v & 0xFFFF);
}

std::string format_number(double v, CsvPrecision precision) {
    char buf[32];
    std::snprintf(buf, sizeof buf, precision == CsvPrecision::table ? "%.2f" : "%.17g", v);
    return buf;
}

json walk_config_json(const WalkConfig& c) {
    return {{"n_sites", c.n_sites},
            {"start", c.start},
            {"steps", c.steps},
            {"mode", to_string(c.mode)},
            {"seed", c.seed},
            {"record_distributions", c.record_distributions}};
}

json grover_config_json(const GroverConfig& c) {
    return {{"marked", c.marked},
            {"iterations", c.iterations},
            {"shots_per_stage", c.shots_per_stage},
            {"seed", c.seed}};
}

json metadata_json(std::uint64_t seed, json config) {
    return {{"generator", SeededSampler::kGeneratorId}, {"seed", seed}, {"config", std::move(config)}};
}

json parse_document(std::string_view text, std::string_view expected_kind) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    const auto kind = doc.value("kind", std::string{});
    if (!expected_kind.empty() && kind != expected_kind)
        throw FormatError("expected a '" + std::string(expected_kind) + "' document, got '" + kind + "'");
    if (doc.value("format_version", 0) != kJsonFormatVersion)
        throw FormatError("unsupported trace format version");
    return doc;
}

template <typename F>
auto with_format_errors(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed trace document: ") + e.what());
    }
}

}  // namespace

// ----------------------------------------------------------------------- SMF

std::uint32_t tempo_microseconds(double tempo_bpm) {
    if (!(tempo_bpm > 0.0) || !std::isfinite(tempo_bpm))
        throw std::invalid_argument("tempo must be positive");
    const double us = std::round(60'000'000.0 / tempo_bpm);
    if (us < 1.0 || us > 0xFFFFFF) throw std::invalid_argument("tempo outside the SMF 24-bit range");
    return static_cast<std::uint32_t>(us);
}

void append_vlq(std::vector<std::uint8_t>& out, std::uint32_t value) {
    if (value > 0x0FFFFFFF) throw std::invalid_argument("delta time exceeds 0x0FFFFFFF");
    std::uint8_t groups[4];
    int n = 0;
    do {
        groups[n++] = static_cast<std::uint8_t>(value & 0x7F);
        value >>= 7;
    } while (value != 0);
    while (n > 1) out.push_back(static_cast<std::uint8_t>(groups[--n] | 0x80));
    out.push_back(groups[0]);
}

std::vector<std::uint8_t> write_smf(const SmfDocument& doc) {
    if (doc.ticks_per_quarter < 1 || doc.ticks_per_quarter > 0x7FFF)
        throw std::invalid_argument("ticks per quarter must be in 1..32767");
    if (doc.channel < 0 || doc.channel > 15) throw std::invalid_argument("channel must be in 0..15");

    // (tick, note-off first, sequence) keeps the output order total.
    struct Message {
        std::uint64_t tick;
        int is_on;
        std::size_t seq;
        std::uint8_t status, data1, data2;
    };
    std::vector<Message> messages;
    messages.reserve(doc.events.size() * 2);
    std::uint32_t prev_onset = 0;
    for (std::size_t i = 0; i < doc.events.size(); ++i) {
        const NoteEvent& e = doc.events[i];
        if (e.onset < prev_onset) throw std::invalid_argument("note events are not sorted by onset");
        prev_onset = e.onset;
        if (e.pitch < 0 || e.pitch > 127) throw std::invalid_argument("pitch outside 0..127");
        if (e.velocity < 1 || e.velocity > 127) throw std::invalid_argument("velocity outside 1..127");
        if (e.duration == 0) throw std::invalid_argument("note duration must be positive");
        const auto ch = static_cast<std::uint8_t>(doc.channel);
        const auto pitch = static_cast<std::uint8_t>(e.pitch);
        messages.push_back({e.onset, 1, i, static_cast<std::uint8_t>(0x90 | ch), pitch,
                            static_cast<std::uint8_t>(e.velocity)});
        messages.push_back({std::uint64_t{e.onset} + e.duration, 0, i,
                            static_cast<std::uint8_t>(0x80 | ch), pitch, 0});
    }
    std::stable_sort(messages.begin(), messages.end(), [](const Message& a, const Message& b) {
        return std::tie(a.tick, a.is_on, a.seq) < std::tie(b.tick, b.is_on, b.seq);
    });

    std::vector<std::uint8_t> track;
    append_vlq(track, 0);
    const std::uint32_t tempo = tempo_microseconds(doc.tempo_bpm);
    track.insert(track.end(), {0xFF, 0x51, 0x03, static_cast<std::uint8_t>(tempo >> 16),
                               static_cast<std::uint8_t>(tempo >> 8), static_cast<std::uint8_t>(tempo)});
    std::uint64_t now = 0;
    for (const auto& m : messages) {
        const std::uint64_t delta = m.tick - now;
        if (delta > 0x0FFFFFFF) throw std::invalid_argument("delta time exceeds 0x0FFFFFFF");
        append_vlq(track, static_cast<std::uint32_t>(delta));
        track.insert(track.end(), {m.status, m.data1, m.data2});
        now = m.tick;
    }
    append_vlq(track, 0);
    track.insert(track.end(), {0xFF, 0x2F, 0x00});

    std::vector<std::uint8_t> out{'M', 'T', 'h', 'd'};
    append_u32(out, 6);
    append_u16(out, 0);  // format 0
    append_u16(out, 1);  // one track
    append_u16(out, static_cast<std::uint32_t>(doc.ticks_per_quarter));
    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    append_u32(out, static_cast<std::uint32_t>(track.size()));
    out.insert(out.end(), track.begin(), track.end());
    return out;
}

// ----------------------------------------------------------------------- CSV

std::string write_csv(const TraceTable& table, CsvPrecision precision) {
    std::string out = "stage";
    for (std::size_t v = 0; v < kGroverOutcomes; ++v) out += "," + outcome_label(v);
    out += '\n';
    for (std::size_t k = 1; k <= table.stage_count(); ++k) {
        out += std::to_string(k);
        for (std::size_t v = 0; v < kGroverOutcomes; ++v)
            out += "," + format_number(table.proportion(k, v), precision);
        out += '\n';
    }
    return out;
}

std::string write_histogram_csv(const TraceTable& table, CsvPrecision precision) {
    std::string out = "stage,outcome,label,count,proportion,exact\n";
    for (std::size_t k = 1; k <= table.stage_count(); ++k) {
        for (std::size_t v = 0; v < kGroverOutcomes; ++v) {
            out += std::to_string(k) + ',' + std::to_string(v) + ',' + outcome_label(v) + ',' +
                   std::to_string(table.counts[k - 1][v]) + ',' +
                   format_number(table.proportion(k, v), precision) + ',' +
                   format_number(table.exact[k - 1][v], precision) + '\n';
        }
    }
    return out;
}

std::string write_csv(const WalkTrace& trace, CsvPrecision precision) {
    const bool with_dists = !trace.per_step_distributions.empty();
    std::string out = "step,position";
    if (with_dists)
        for (std::size_t j = 0; j < trace.config.n_sites; ++j) out += ",p" + std::to_string(j);
    out += '\n';
    for (std::size_t i = 0; i < trace.positions.size(); ++i) {
        out += std::to_string(i + 1) + ',' + std::to_string(trace.positions[i]);
        if (with_dists)
            for (double p : trace.per_step_distributions[i].probabilities())
                out += ',' + format_number(p, precision);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------- JSON

std::string write_json(const WalkTrace& trace) {
    json doc;
    doc["kind"] = "walk_trace";
    doc["format_version"] = kJsonFormatVersion;
    doc["metadata"] = metadata_json(trace.config.seed, walk_config_json(trace.config));
    doc["positions"] = trace.positions;
    json dists = json::array();
    for (const auto& d : trace.per_step_distributions)
        dists.push_back(std::vector<double>(d.probabilities().begin(), d.probabilities().end()));
    doc["distributions"] = std::move(dists);
    return doc.dump(2) + '\n';
}

std::string write_json(const TraceTable& table) {
    json doc;
    doc["kind"] = "grover_trace";
    doc["format_version"] = kJsonFormatVersion;
    doc["metadata"] = metadata_json(table.config.seed, grover_config_json(table.config));
    doc["metadata"]["bit_order"] = kBitOrder;
    doc["shots"] = table.shots;
    json labels = json::array();
    for (std::size_t v = 0; v < kGroverOutcomes; ++v) labels.push_back(outcome_label(v));
    doc["labels"] = std::move(labels);

    const GroverCircuit circuit = build_circuit(table.config);
    json stages = json::array();
    for (std::size_t k = 1; k <= table.stage_count(); ++k) {
        json row;
        row["stage"] = k;
        if (k <= circuit.stage_count()) row["gates"] = describe(circuit.stages[k - 1]);
        row["counts"] = table.counts[k - 1];
        std::vector<double> props;
        for (std::size_t v = 0; v < kGroverOutcomes; ++v) props.push_back(table.proportion(k, v));
        row["proportions"] = props;
        row["exact"] = table.exact[k - 1];
        row["samples"] = table.samples[k - 1];
        stages.push_back(std::move(row));
    }
    doc["stages"] = std::move(stages);
    return doc.dump(2) + '\n';
}

WalkTrace read_walk_trace_json(std::string_view text) {
    const json doc = parse_document(text, "walk_trace");
    return with_format_errors([&] {
        const json& c = doc.at("metadata").at("config");
        WalkTrace trace;
        trace.config.n_sites = c.at("n_sites").get<std::size_t>();
        trace.config.start = c.at("start").get<std::size_t>();
        trace.config.steps = c.at("steps").get<std::size_t>();
        trace.config.mode = parse_walk_mode(c.at("mode").get<std::string>());
        trace.config.seed = c.at("seed").get<std::uint64_t>();
        trace.config.record_distributions = c.at("record_distributions").get<bool>();
        trace.positions = doc.at("positions").get<std::vector<std::size_t>>();
        for (const auto& d : doc.at("distributions"))
            trace.per_step_distributions.emplace_back(d.get<std::vector<double>>());
        if (trace.positions.size() != trace.config.steps)
            throw FormatError("walk trace has " + std::to_string(trace.positions.size()) +
                              " positions for " + std::to_string(trace.config.steps) + " steps");
        return trace;
    });
}

TraceTable read_trace_table_json(std::string_view text) {
    const json doc = parse_document(text, "grover_trace");
    return with_format_errors([&] {
        const json& c = doc.at("metadata").at("config");
        TraceTable table;
        table.config.marked = c.at("marked").get<int>();
        table.config.iterations = c.at("iterations").get<std::size_t>();
        table.config.shots_per_stage = c.at("shots_per_stage").get<std::size_t>();
        table.config.seed = c.at("seed").get<std::uint64_t>();
        table.shots = doc.at("shots").get<std::size_t>();
        for (const auto& row : doc.at("stages")) {
            table.counts.push_back(row.at("counts").get<std::array<std::size_t, kGroverOutcomes>>());
            table.exact.push_back(row.at("exact").get<std::array<double, kGroverOutcomes>>());
            table.samples.push_back(row.at("samples").get<std::vector<std::size_t>>());
        }
        return table;
    });
}

JsonSequence read_json_sequence(std::string_view text) {
    const json doc = parse_document(text, "");
    const auto kind = doc.value("kind", std::string{});
    auto to_ints = [](const std::vector<std::size_t>& v) { return std::vector<int>(v.begin(), v.end()); };
    if (kind == "walk_trace") return {DataSource::walk, to_ints(read_walk_trace_json(text).positions)};
    if (kind == "grover_trace")
        return {DataSource::grover, to_ints(read_trace_table_json(text).flattened_samples())};
    throw FormatError("unknown trace document kind '" + kind + "'");
}

// -------------------------------------------------------------- number files

NumberFile parse_numbers(std::string_view text, std::string source_path) {
    NumberFile file{{}, std::move(source_path)};
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i == line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            const std::string_view token = line.substr(i, j - i);
            int value = 0;
            const char* first = token.data();
            if (!token.empty() && token.front() == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size() || first == token.data() + token.size()) {
                throw FormatError(file.source_path + ":" + std::to_string(line_no) +
                                  ": not an integer: '" + std::string(token) + "'");
            }
            file.values.push_back(value);
            i = j;
        }
        pos = eol + 1;
    }
    if (file.values.empty()) throw FormatError(file.source_path + ": no numbers found");
    return file;
}

NumberFile read_numbers(const std::filesystem::path& path) {
    return parse_numbers(read_text_file(path), path.string());
}

std::string write_numbers(std::span<const int> values) {
    std::string out;
    for (int v : values) out += std::to_string(v) + '\n';
    return out;
}

// ------------------------------------------------------------------ file I/O

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string() + ": " + std::strerror(errno));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace qsonify
