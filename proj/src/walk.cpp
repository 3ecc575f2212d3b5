#include "qsonify/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsonify {

std::string_view to_string(WalkMode mode) {
    return mode == WalkMode::quantum ? "quantum" : "classical";
}

WalkMode parse_walk_mode(std::string_view text) {
    if (text == "quantum") return WalkMode::quantum;
    if (text == "classical") return WalkMode::classical;
    throw std::invalid_argument("unknown walk mode '" + std::string(text) +
                                "' (expected quantum or classical)");
}

void WalkConfig::validate() const {
    if (n_sites < 2) throw std::invalid_argument("walk needs at least 2 sites");
    if (start >= n_sites) {
        throw std::out_of_range("start site " + std::to_string(start) + " outside [0, " +
                                std::to_string(n_sites) + ")");
    }
    if (steps < 1) throw std::invalid_argument("walk needs at least 1 step");
}

UnitaryMatrix build_coin_op(std::size_t n_sites) {
    if (n_sites < 1) throw std::invalid_argument("coin operator needs at least 1 site");
    return kron(UnitaryMatrix::hadamard(), UnitaryMatrix::identity(n_sites));
}

UnitaryMatrix build_move_op(std::size_t n_sites) {
    if (n_sites < 2) throw std::invalid_argument("move operator needs at least 2 sites");
    Matrix shift_right(n_sites);
    Matrix shift_left(n_sites);
    for (std::size_t j = 0; j < n_sites; ++j) {
        shift_right((j + 1) % n_sites, j) = 1.0;
        shift_left((j + n_sites - 1) % n_sites, j) = 1.0;
    }
    Matrix heads_proj(2);
    heads_proj(kHeads, kHeads) = 1.0;
    Matrix tails_proj(2);
    tails_proj(kTails, kTails) = 1.0;
    return UnitaryMatrix(kron(heads_proj, shift_right) + kron(tails_proj, shift_left));
}

WalkOperators::WalkOperators(std::size_t n)
    : n_sites(n), coin(build_coin_op(n)), move(build_move_op(n)) {}

WalkState init_state(const WalkConfig& config) {
    config.validate();
    return {StateVector::basis(2 * config.n_sites, kHeads * config.n_sites + config.start), 0};
}

StepResult step(const WalkState& state, const WalkOperators& ops, WalkMode mode,
                SeededSampler& sampler) {
    StateVector psi = apply(ops.move, apply(ops.coin, state.psi));
    ProbabilityDistribution marginal = marginal_sites(psi, ops.n_sites);
    const std::size_t pos = sampler.draw(marginal);
    if (mode == WalkMode::classical) {
        psi = StateVector::basis(2 * ops.n_sites, kHeads * ops.n_sites + pos);
    }
    return {pos, WalkState{std::move(psi), state.step_count + 1}, std::move(marginal)};
}

StepResult step(const WalkState& state, const WalkConfig& config, SeededSampler& sampler) {
    config.validate();
    return step(state, WalkOperators(config.n_sites), config.mode, sampler);
}

WalkTrace run_walk(const WalkConfig& config) {
    config.validate();
    const WalkOperators ops(config.n_sites);
    SeededSampler sampler(config.seed);

    WalkTrace trace{config, {}, {}};
    trace.positions.reserve(config.steps);
    if (config.record_distributions) trace.per_step_distributions.reserve(config.steps);

    WalkState state = init_state(config);
    for (std::size_t i = 0; i < config.steps; ++i) {
        StepResult r = step(state, ops, config.mode, sampler);
        trace.positions.push_back(r.position);
        if (config.record_distributions) trace.per_step_distributions.push_back(std::move(r.marginal));
        state = std::move(r.next);
    }
    return trace;
}

std::vector<ProbabilityDistribution> exact_marginals(std::size_t n_sites, std::size_t start,
                                                     std::size_t steps) {
    WalkConfig cfg;
    cfg.n_sites = n_sites;
    cfg.start = start;
    cfg.steps = steps;
    cfg.validate();

    const WalkOperators ops(n_sites);
    std::vector<ProbabilityDistribution> out;
    out.reserve(steps);
    StateVector psi = init_state(cfg).psi;
    for (std::size_t i = 0; i < steps; ++i) {
        psi = apply(ops.move, apply(ops.coin, psi));
        out.push_back(marginal_sites(psi, n_sites));
    }
    return out;
}

double position_stddev(const ProbabilityDistribution& dist) {
    double mean = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) mean += dist[j] * static_cast<double>(j);
    double var = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) {
        const double d = static_cast<double>(j) - mean;
        var += dist[j] * d * d;
    }
    return std::sqrt(var);
}

}  // namespace qsonify
