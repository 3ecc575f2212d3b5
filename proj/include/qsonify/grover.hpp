// grover.hpp
// Three-qubit Grover search sliced into stages (gate columns). Qubits are
// numbered q1, q2, q3; basis index = 4*q3 + 2*q2 + q1, so the readout string
// is "q3 q2 q1" with q3 most significant and the outcome 110 is value 6.
//
// One iteration adds ten stages after the initial H column:
//   oracle:   [X on zero bits of marked, H q3] [CCX q1 q2 -> q3] [H q3, X on zero bits]
//   diffuser: [H H H] [X X X] [H q3] [CCX] [H q3] [X X X] [H H H]
// For marked = 6 and one iteration this is the eleven-stage circuit below.
//
//   q1: H  X  *  X  H  X  .  *  .  X  H
//   q2: H  .  *  .  H  X  .  *  .  X  H
//   q3: H  H  +  H  H  X  H  +  H  X  H

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsonify/statevec.hpp"

namespace qsonify {

inline constexpr std::size_t kGroverQubits = 3;
inline constexpr std::size_t kGroverOutcomes = 8;

struct GroverConfig {
    int marked = 6;
    std::size_t iterations = 1;
    std::size_t shots_per_stage = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class GateKind { h, x, ccx };

// Qubit numbers are 1-based. For ccx, qubits = {control, control, target}.
struct Gate {
    GateKind kind;
    std::array<int, 3> qubits{};

    static Gate h(int q) { return {GateKind::h, {q, 0, 0}}; }
    static Gate x(int q) { return {GateKind::x, {q, 0, 0}}; }
    static Gate ccx(int c1, int c2, int target) { return {GateKind::ccx, {c1, c2, target}}; }

    bool operator==(const Gate&) const = default;
};

// Gates of one column, applied in listed order.
using GateColumn = std::vector<Gate>;

struct GroverCircuit {
    GroverConfig config;
    std::vector<GateColumn> stages;

    std::size_t stage_count() const { return stages.size(); }
};

// Renders a stage as e.g. "X(q1) H(q3)" or "CCX(q1,q2->q3)".
std::string describe(const GateColumn& column);

// "110" for 6.
std::string outcome_label(std::size_t value);

GroverCircuit build_circuit(const GroverConfig& config);

// Composite 8x8 operator of one column.
UnitaryMatrix column_operator(const GateColumn& column);

// Product of stages first..last (1-based, inclusive), later stages on the left.
UnitaryMatrix stage_range_operator(const GroverCircuit& circuit, std::size_t first,
                                   std::size_t last);

// |000> evolved through stages 1..k. Throws std::out_of_range for k outside
// [1, stage_count].
StateVector state_at_stage(const GroverCircuit& circuit, std::size_t k);

// All stage snapshots 1..stage_count, evaluated incrementally.
std::vector<StateVector> all_stage_states(const GroverCircuit& circuit);

ProbabilityDistribution stage_distribution(const GroverCircuit& circuit, std::size_t k);

std::vector<std::size_t> sample_stage(const GroverCircuit& circuit, std::size_t k,
                                      std::size_t shots, SeededSampler& sampler);

// Stage x outcome tallies.
struct TraceTable {
    GroverConfig config;
    std::size_t shots = 0;
    // samples[k - 1] holds the raw outcomes drawn at stage k, in draw order.
    std::vector<std::vector<std::size_t>> samples;
    std::vector<std::array<std::size_t, kGroverOutcomes>> counts;
    std::vector<std::array<double, kGroverOutcomes>> exact;

    std::size_t stage_count() const { return counts.size(); }
    double proportion(std::size_t stage, std::size_t outcome) const;
    // Stage samples concatenated in stage order.
    std::vector<std::size_t> flattened_samples() const;
};

// One sampler seeded with config.seed drives every stage in order.
TraceTable full_trace(const GroverConfig& config);

// sin^2((2k+1) theta), sin theta = 1/sqrt(8).
double grover_success_probability(std::size_t iterations);

}  // namespace qsonify
