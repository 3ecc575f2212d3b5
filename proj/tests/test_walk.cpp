#include <cmath>
#include <set>

#include "doctest.h"
#include "qsonify/walk.hpp"
#include "support/oracles.hpp"

using namespace qsonify;

namespace {

WalkConfig config(WalkMode mode, std::size_t steps, std::uint64_t seed, std::size_t start = 7) {
    WalkConfig c;
    c.mode = mode;
    c.steps = steps;
    c.seed = seed;
    c.start = start;
    return c;
}

int ring_delta(std::size_t a, std::size_t b, int n = 14) {
    int d = ((static_cast<int>(b) - static_cast<int>(a)) % n + n) % n;
    return 2 * d > n ? d - n : d;
}

}  // namespace

TEST_CASE("coin operator") {
    CHECK(build_coin_op(1).matrix().max_abs_diff(UnitaryMatrix::hadamard().matrix()) == 0.0);
    const auto c = build_coin_op(14);
    CHECK(c.dimension() == 28);
    CHECK((c * c).matrix().max_abs_diff(Matrix::identity(28)) < 1e-12);
    CHECK_THROWS(build_coin_op(0));
}

TEST_CASE("move operator") {
    const auto m = build_move_op(14);
    SUBCASE("heads wraps 13 -> 0") {
        const auto out = apply(m, StateVector::basis(28, 13));
        CHECK(out[0] == Complex{1.0});
    }
    SUBCASE("tails wraps 0 -> 13") {
        const auto out = apply(m, StateVector::basis(28, 14 + 0));
        CHECK(out[14 + 13] == Complex{1.0});
    }
    SUBCASE("after the coin, heads (x) 8 + tails (x) 6") {
        const auto out = apply(m, apply(build_coin_op(14), StateVector::basis(28, 7)));
        const double s = 1.0 / std::sqrt(2.0);
        for (std::size_t i = 0; i < 28; ++i) {
            const double expected = (i == 8 || i == 14 + 6) ? s : 0.0;
            CHECK(std::abs(out[i] - Complex{expected}) < 1e-15);
        }
    }
    SUBCASE("permutation matrix") {
        for (std::size_t r = 0; r < 28; ++r) {
            int ones_row = 0, ones_col = 0;
            for (std::size_t c = 0; c < 28; ++c) {
                CHECK((m(r, c) == Complex{0.0} || m(r, c) == Complex{1.0}));
                ones_row += m(r, c) == Complex{1.0};
                ones_col += m(c, r) == Complex{1.0};
            }
            CHECK(ones_row == 1);
            CHECK(ones_col == 1);
        }
    }
    CHECK(unitarity_error(m.matrix()) < 1e-12);
    CHECK_THROWS(build_move_op(1));
}

TEST_CASE("init_state") {
    const auto s = init_state(WalkConfig{});
    CHECK(s.psi.dimension() == 28);
    CHECK(s.psi[7] == Complex{1.0});
    CHECK(s.psi.norm() == 1.0);
    CHECK(init_state(config(WalkMode::quantum, 1, 0, 0)).psi[0] == Complex{1.0});
    CHECK_THROWS_AS(init_state(config(WalkMode::quantum, 1, 0, 14)), std::out_of_range);
}

TEST_CASE("config validation") {
    WalkConfig c;
    c.n_sites = 1;
    c.start = 0;
    CHECK_THROWS(c.validate());
    c = WalkConfig{};
    c.steps = 0;
    CHECK_THROWS(c.validate());
    CHECK(parse_walk_mode("classical") == WalkMode::classical);
    CHECK_THROWS(parse_walk_mode("quantumish"));
}

TEST_CASE("exact marginals match the hand-expansion oracle") {
    const auto engine = exact_marginals(14, 7, 20);
    const auto ref = oracle::walk_marginals(14, 7, 20);
    for (std::size_t t = 0; t < engine.size(); ++t)
        for (std::size_t j = 0; j < 14; ++j) CHECK(std::abs(engine[t][j] - ref[t][j]) < 1e-12);

    SUBCASE("frozen small-step values") {
        // From the oracle above, also reproduced by expanding by hand.
        const std::map<std::size_t, double> step1{{6, 0.5}, {8, 0.5}};
        const std::map<std::size_t, double> step2{{5, 0.25}, {7, 0.5}, {9, 0.25}};
        const std::map<std::size_t, double> step3{{4, 0.125}, {6, 0.125}, {8, 0.625}, {10, 0.125}};
        for (const auto& [want, step] :
             {std::pair{step1, 0u}, std::pair{step2, 1u}, std::pair{step3, 2u}}) {
            for (std::size_t j = 0; j < 14; ++j) {
                const double expected = want.count(j) ? want.at(j) : 0.0;
                CHECK(std::abs(engine[step][j] - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("step") {
    SUBCASE("first step lands on 6 or 8 and both occur") {
        std::set<std::size_t> seen;
        for (std::uint64_t seed = 0; seed < 64; ++seed) {
            SeededSampler s(seed);
            const auto r = step(init_state(WalkConfig{}), WalkConfig{}, s);
            CHECK((r.position == 6 || r.position == 8));
            seen.insert(r.position);
        }
        CHECK(seen.size() == 2);
    }
    SUBCASE("classical from site 0 reaches only 1 or 13") {
        const auto cfg = config(WalkMode::classical, 1, 0, 0);
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            SeededSampler s(seed);
            const auto r = step(init_state(cfg), cfg, s);
            CHECK((r.position == 1 || r.position == 13));
            // collapsed onto heads (x) position
            CHECK(r.next.psi[r.position] == Complex{1.0});
        }
    }
    SUBCASE("quantum step keeps the unmeasured state") {
        SeededSampler s(1);
        const auto r = step(init_state(WalkConfig{}), WalkConfig{}, s);
        CHECK(std::abs(std::norm(r.next.psi[8]) - 0.5) < 1e-15);
        CHECK(std::abs(std::norm(r.next.psi[14 + 6]) - 0.5) < 1e-15);
        CHECK(r.next.step_count == 1);
    }
}

TEST_CASE("run_walk") {
    SUBCASE("single step") {
        const auto t = run_walk(config(WalkMode::quantum, 1, 3));
        REQUIRE(t.positions.size() == 1);
        CHECK((t.positions[0] == 6 || t.positions[0] == 8));
    }
    SUBCASE("classical trace is a nearest-neighbour ring walk") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto t = run_walk(config(WalkMode::classical, 1000, seed));
            REQUIRE(t.positions.size() == 1000);
            CHECK(std::abs(ring_delta(7, t.positions[0])) == 1);
            for (std::size_t i = 1; i < t.positions.size(); ++i)
                CHECK(std::abs(ring_delta(t.positions[i - 1], t.positions[i])) == 1);
        }
    }
    SUBCASE("deterministic per seed") {
        const auto a = run_walk(config(WalkMode::quantum, 200, 42));
        const auto b = run_walk(config(WalkMode::quantum, 200, 42));
        CHECK(a.positions == b.positions);
    }
    SUBCASE("quantum distributions do not depend on the seed") {
        const auto a = run_walk(config(WalkMode::quantum, 50, 1));
        const auto b = run_walk(config(WalkMode::quantum, 50, 2));
        for (std::size_t t = 0; t < 50; ++t)
            for (std::size_t j = 0; j < 14; ++j)
                CHECK(a.per_step_distributions[t][j] == b.per_step_distributions[t][j]);
    }
    SUBCASE("distributions can be omitted") {
        auto c = config(WalkMode::quantum, 10, 1);
        c.record_distributions = false;
        CHECK(run_walk(c).per_step_distributions.empty());
    }
}

TEST_CASE("quantum spread beats classical at step 6") {
    const auto marg = exact_marginals(14, 7, 6);
    const double quantum_sigma = position_stddev(marg.back());
    CHECK(quantum_sigma > std::sqrt(6.0));
    // Oracle value: 3.1124748994971823
    CHECK(quantum_sigma == doctest::Approx(3.1124748994971823).epsilon(1e-12));
}
