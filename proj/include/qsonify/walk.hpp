// walk.hpp
// Discrete-time coined walk on a ring of sites. The joint state lives in
// coin (x) site space with coin as the slow index, so flat index
// coin * n_sites + site. Heads shifts the walker to site + 1, tails to
// site - 1, both modulo n_sites.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qsonify/statevec.hpp"

namespace qsonify {

enum class WalkMode { quantum, classical };

std::string_view to_string(WalkMode mode);
// Throws std::invalid_argument for anything but "quantum" / "classical".
WalkMode parse_walk_mode(std::string_view text);

inline constexpr std::size_t kHeads = 0;
inline constexpr std::size_t kTails = 1;

struct WalkConfig {
    std::size_t n_sites = 14;
    std::size_t start = 7;
    std::size_t steps = 1000;
    WalkMode mode = WalkMode::quantum;
    std::uint64_t seed = 0;
    // Keep the exact position marginal after every step in the trace.
    bool record_distributions = true;

    // Throws std::invalid_argument / std::out_of_range on bad values.
    void validate() const;
};

struct WalkState {
    StateVector psi;
    std::size_t step_count = 0;
};

struct WalkTrace {
    WalkConfig config;
    std::vector<std::size_t> positions;
    // Empty unless config.record_distributions.
    std::vector<ProbabilityDistribution> per_step_distributions;
};

// H (x) I_n.
UnitaryMatrix build_coin_op(std::size_t n_sites);

// |H><H| (x) sum_j |j+1><j|  +  |T><T| (x) sum_j |j-1><j|, indices mod n.
UnitaryMatrix build_move_op(std::size_t n_sites);

// Coin and move operators for one ring size, built once per walk.
struct WalkOperators {
    explicit WalkOperators(std::size_t n_sites);

    std::size_t n_sites;
    UnitaryMatrix coin;
    UnitaryMatrix move;
};

// |heads> (x) |start>.
WalkState init_state(const WalkConfig& config);

struct StepResult {
    std::size_t position;
    WalkState next;
    ProbabilityDistribution marginal;
};

// Coin, move, then sample one position from the site marginal. In quantum
// mode the returned state is the unmeasured post-move state; in classical
// mode it is |heads> (x) |position>.
StepResult step(const WalkState& state, const WalkOperators& ops, WalkMode mode,
                SeededSampler& sampler);
StepResult step(const WalkState& state, const WalkConfig& config, SeededSampler& sampler);

WalkTrace run_walk(const WalkConfig& config);

// Exact site marginals after steps 1..steps of the unmeasured quantum walk.
std::vector<ProbabilityDistribution> exact_marginals(std::size_t n_sites, std::size_t start,
                                                     std::size_t steps);

// Standard deviation of the site index under `dist` (sites treated as points
// on a line, not a ring).
double position_stddev(const ProbabilityDistribution& dist);

}  // namespace qsonify
