#include "qsonify/grover.hpp"

#include <cmath>
#include <stdexcept>

namespace qsonify {

namespace {

std::size_t bit(int qubit) { return static_cast<std::size_t>(qubit - 1); }

void check_qubit(int q) {
    if (q < 1 || q > static_cast<int>(kGroverQubits))
        throw std::invalid_argument("qubit q" + std::to_string(q) + " does not exist");
}

// Applies one gate in place to an 8-amplitude vector.
void apply_gate(const Gate& g, std::array<Complex, kGroverOutcomes>& amps) {
    switch (g.kind) {
    case GateKind::h: {
        check_qubit(g.qubits[0]);
        const std::size_t mask = std::size_t{1} << bit(g.qubits[0]);
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < kGroverOutcomes; ++i) {
            if (i & mask) continue;
            const Complex a0 = amps[i];
            const Complex a1 = amps[i | mask];
            amps[i] = s * (a0 + a1);
            amps[i | mask] = s * (a0 - a1);
        }
        break;
    }
    case GateKind::x: {
        check_qubit(g.qubits[0]);
        const std::size_t mask = std::size_t{1} << bit(g.qubits[0]);
        for (std::size_t i = 0; i < kGroverOutcomes; ++i)
            if (!(i & mask)) std::swap(amps[i], amps[i | mask]);
        break;
    }
    case GateKind::ccx: {
        for (int q : g.qubits) check_qubit(q);
        if (g.qubits[0] == g.qubits[1] || g.qubits[0] == g.qubits[2] || g.qubits[1] == g.qubits[2])
            throw std::invalid_argument("ccx qubits must be distinct");
        const std::size_t controls =
            (std::size_t{1} << bit(g.qubits[0])) | (std::size_t{1} << bit(g.qubits[1]));
        const std::size_t target = std::size_t{1} << bit(g.qubits[2]);
        for (std::size_t i = 0; i < kGroverOutcomes; ++i)
            if ((i & controls) == controls && !(i & target)) std::swap(amps[i], amps[i | target]);
        break;
    }
    }
}

GateColumn all_qubits(Gate (*make)(int)) {
    GateColumn col;
    for (int q = 1; q <= static_cast<int>(kGroverQubits); ++q) col.push_back(make(q));
    return col;
}

}  // namespace

void GroverConfig::validate() const {
    if (marked < 0 || marked >= static_cast<int>(kGroverOutcomes))
        throw std::out_of_range("marked state " + std::to_string(marked) + " outside [0, 7]");
    if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
    if (shots_per_stage < 1) throw std::invalid_argument("shots per stage must be at least 1");
}

std::string describe(const GateColumn& column) {
    std::string out;
    for (const auto& g : column) {
        if (!out.empty()) out += ' ';
        switch (g.kind) {
        case GateKind::h: out += "H(q" + std::to_string(g.qubits[0]) + ")"; break;
        case GateKind::x: out += "X(q" + std::to_string(g.qubits[0]) + ")"; break;
        case GateKind::ccx:
            out += "CCX(q" + std::to_string(g.qubits[0]) + ",q" + std::to_string(g.qubits[1]) +
                   "->q" + std::to_string(g.qubits[2]) + ")";
            break;
        }
    }
    return out;
}

std::string outcome_label(std::size_t value) {
    if (value >= kGroverOutcomes) throw std::out_of_range("outcome outside [0, 7]");
    std::string s(kGroverQubits, '0');
    for (std::size_t q = 0; q < kGroverQubits; ++q)
        if (value & (std::size_t{1} << q)) s[kGroverQubits - 1 - q] = '1';
    return s;
}

GroverCircuit build_circuit(const GroverConfig& config) {
    config.validate();
    const auto marked = static_cast<std::size_t>(config.marked);

    // X gates turn the marked pattern into 111 so the CCX phase flip selects it.
    GateColumn flip_zero_bits;
    for (int q = 1; q <= static_cast<int>(kGroverQubits); ++q)
        if (!(marked & (std::size_t{1} << bit(q)))) flip_zero_bits.push_back(Gate::x(q));

    GateColumn oracle_in = flip_zero_bits;
    oracle_in.push_back(Gate::h(3));
    GateColumn oracle_out{Gate::h(3)};
    oracle_out.insert(oracle_out.end(), flip_zero_bits.begin(), flip_zero_bits.end());

    const GateColumn hadamards = all_qubits(&Gate::h);
    const GateColumn nots = all_qubits(&Gate::x);
    const GateColumn toffoli{Gate::ccx(1, 2, 3)};
    const GateColumn target_h{Gate::h(3)};

    GroverCircuit circuit{config, {hadamards}};
    for (std::size_t it = 0; it < config.iterations; ++it) {
        circuit.stages.push_back(oracle_in);
        circuit.stages.push_back(toffoli);
        circuit.stages.push_back(oracle_out);

        circuit.stages.push_back(hadamards);
        circuit.stages.push_back(nots);
        circuit.stages.push_back(target_h);
        circuit.stages.push_back(toffoli);
        circuit.stages.push_back(target_h);
        circuit.stages.push_back(nots);
        circuit.stages.push_back(hadamards);
    }
    return circuit;
}

UnitaryMatrix column_operator(const GateColumn& column) {
    Matrix m(kGroverOutcomes);
    for (std::size_t c = 0; c < kGroverOutcomes; ++c) {
        std::array<Complex, kGroverOutcomes> amps{};
        amps[c] = 1.0;
        for (const auto& g : column) apply_gate(g, amps);
        for (std::size_t r = 0; r < kGroverOutcomes; ++r) m(r, c) = amps[r];
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix stage_range_operator(const GroverCircuit& circuit, std::size_t first,
                                   std::size_t last) {
    if (first < 1 || last > circuit.stage_count() || first > last)
        throw std::out_of_range("stage range outside circuit");
    UnitaryMatrix total = UnitaryMatrix::identity(kGroverOutcomes);
    for (std::size_t k = first; k <= last; ++k) total = column_operator(circuit.stages[k - 1]) * total;
    return total;
}

StateVector state_at_stage(const GroverCircuit& circuit, std::size_t k) {
    if (k < 1 || k > circuit.stage_count()) {
        throw std::out_of_range("stage " + std::to_string(k) + " outside [1, " +
                                std::to_string(circuit.stage_count()) + "]");
    }
    StateVector psi = StateVector::basis(kGroverOutcomes, 0);
    for (std::size_t s = 0; s < k; ++s) psi = apply(column_operator(circuit.stages[s]), psi);
    return psi;
}

std::vector<StateVector> all_stage_states(const GroverCircuit& circuit) {
    std::vector<StateVector> out;
    out.reserve(circuit.stage_count());
    StateVector psi = StateVector::basis(kGroverOutcomes, 0);
    for (const auto& column : circuit.stages) {
        psi = apply(column_operator(column), psi);
        out.push_back(psi);
    }
    return out;
}

ProbabilityDistribution stage_distribution(const GroverCircuit& circuit, std::size_t k) {
    return born_probabilities(state_at_stage(circuit, k));
}

std::vector<std::size_t> sample_stage(const GroverCircuit& circuit, std::size_t k,
                                      std::size_t shots, SeededSampler& sampler) {
    return sample(stage_distribution(circuit, k), sampler, shots);
}

double TraceTable::proportion(std::size_t stage, std::size_t outcome) const {
    return static_cast<double>(counts.at(stage - 1).at(outcome)) / static_cast<double>(shots);
}

std::vector<std::size_t> TraceTable::flattened_samples() const {
    std::vector<std::size_t> out;
    for (const auto& s : samples) out.insert(out.end(), s.begin(), s.end());
    return out;
}

TraceTable full_trace(const GroverConfig& config) {
    const GroverCircuit circuit = build_circuit(config);
    SeededSampler sampler(config.seed);

    TraceTable table;
    table.config = config;
    table.shots = config.shots_per_stage;
    for (const auto& psi : all_stage_states(circuit)) {
        const ProbabilityDistribution dist = born_probabilities(psi);
        auto draws = sample(dist, sampler, config.shots_per_stage);

        std::array<std::size_t, kGroverOutcomes> counts{};
        for (auto v : draws) ++counts[v];
        std::array<double, kGroverOutcomes> exact{};
        for (std::size_t i = 0; i < kGroverOutcomes; ++i) exact[i] = dist[i];

        table.samples.push_back(std::move(draws));
        table.counts.push_back(counts);
        table.exact.push_back(exact);
    }
    return table;
}

double grover_success_probability(std::size_t iterations) {
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(kGroverOutcomes)));
    const double s = std::sin(static_cast<double>(2 * iterations + 1) * theta);
    return s * s;
}

}  // namespace qsonify
