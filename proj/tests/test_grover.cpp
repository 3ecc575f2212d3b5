#include <cmath>
#include <set>

#include "doctest.h"
#include "qsonify/grover.hpp"
#include "support/oracles.hpp"

using namespace qsonify;

namespace {

GroverConfig cfg(int marked, std::size_t iterations = 1, std::size_t shots = 100,
                 std::uint64_t seed = 0) {
    return {marked, iterations, shots, seed};
}

}  // namespace

TEST_CASE("bit order labels") {
    CHECK(outcome_label(6) == "110");
    CHECK(outcome_label(2) == "010");
    CHECK(outcome_label(0) == "000");
    CHECK_THROWS(outcome_label(8));
}

TEST_CASE("default circuit reproduces the eleven drawn columns") {
    const auto c = build_circuit(cfg(6));
    REQUIRE(c.stage_count() == 11);
    const std::vector<std::string> expected{
        "H(q1) H(q2) H(q3)",
        "X(q1) H(q3)",
        "CCX(q1,q2->q3)",
        "H(q3) X(q1)",
        "H(q1) H(q2) H(q3)",
        "X(q1) X(q2) X(q3)",
        "H(q3)",
        "CCX(q1,q2->q3)",
        "H(q3)",
        "X(q1) X(q2) X(q3)",
        "H(q1) H(q2) H(q3)",
    };
    for (std::size_t k = 0; k < 11; ++k) CHECK(describe(c.stages[k]) == expected[k]);

    // Column operators against explicit Kronecker-product construction.
    const auto ref = oracle::fig1_stages();
    for (std::size_t k = 0; k < 11; ++k) {
        const auto u = column_operator(c.stages[k]);
        double worst = 0.0;
        for (int r = 0; r < 8; ++r)
            for (int col = 0; col < 8; ++col)
                worst = std::max(worst, std::abs(u(r, col) - ref[k][r][col]));
        CHECK_MESSAGE(worst < 1e-15, "stage " << k + 1);
    }
}

TEST_CASE("marked 7 needs no X gates in the oracle") {
    const auto c = build_circuit(cfg(7));
    CHECK(describe(c.stages[1]) == "H(q3)");
    CHECK(describe(c.stages[3]) == "H(q3)");
}

TEST_CASE("stage count grows by ten per iteration") {
    CHECK(build_circuit(cfg(6, 2)).stage_count() == 21);
    CHECK(build_circuit(cfg(6, 3)).stage_count() == 31);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(build_circuit(cfg(8)), std::out_of_range);
    CHECK_THROWS_AS(build_circuit(cfg(-1)), std::out_of_range);
    CHECK_THROWS(build_circuit(cfg(6, 0)));
    const auto c = build_circuit(cfg(6));
    CHECK_THROWS_AS(state_at_stage(c, 0), std::out_of_range);
    CHECK_THROWS_AS(state_at_stage(c, 12), std::out_of_range);
}

TEST_CASE("every column and composite is unitary") {
    for (int m = 0; m < 8; ++m) {
        const auto c = build_circuit(cfg(m, 2));
        for (const auto& col : c.stages) CHECK(unitarity_error(column_operator(col).matrix()) < 1e-12);
        CHECK(unitarity_error(stage_range_operator(c, 1, c.stage_count()).matrix()) < 1e-12);
    }
}

TEST_CASE("stage snapshots") {
    const auto c = build_circuit(cfg(6));
    SUBCASE("stage 1 is uniform") {
        const auto psi = state_at_stage(c, 1);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(psi[i] - 1.0 / std::sqrt(8.0)) < 1e-15);
    }
    SUBCASE("stage 11 distribution") {
        const auto p = stage_distribution(c, 11);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(std::abs(p[i] - (i == 6 ? 25.0 / 32.0 : 1.0 / 32.0)) < 1e-12);
    }
    SUBCASE("every stage matches the brute-force matrix product") {
        const auto ref = oracle::fig1_stages();
        for (std::size_t k = 1; k <= 11; ++k) {
            const auto p = stage_distribution(c, k);
            const auto q = oracle::grover_probs(ref, k);
            for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(p[i] - q[i]) < 1e-12);
            for (double x : p.probabilities()) CHECK(x >= 0.0);
        }
    }
    SUBCASE("slicing equals the one-shot product") {
        const auto all = stage_range_operator(c, 1, 11);
        const auto psi_direct = apply(all, StateVector::basis(8, 0));
        const auto psi_sliced = state_at_stage(c, 11);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(psi_direct[i] - psi_sliced[i]) < 1e-12);
    }
}

TEST_CASE("success probability over iterations") {
    for (int k = 1; k <= 3; ++k) {
        const auto c = build_circuit(cfg(6, static_cast<std::size_t>(k)));
        const double p = stage_distribution(c, c.stage_count())[6];
        CHECK(std::abs(p - grover_success_probability(static_cast<std::size_t>(k))) < 1e-12);
        CHECK(std::abs(p - oracle::amplified_success(k)) < 1e-12);
    }
    // sin^2(5 theta) with sin theta = 1/sqrt 8 is 121/128.
    CHECK(std::abs(grover_success_probability(2) - 121.0 / 128.0) < 1e-12);
}

TEST_CASE("oracle block flips exactly the marked sign") {
    for (int m = 0; m < 8; ++m) {
        const auto oracle_op = stage_range_operator(build_circuit(cfg(m)), 2, 4);
        for (std::size_t r = 0; r < 8; ++r)
            for (std::size_t c = 0; c < 8; ++c) {
                const double expected = r != c ? 0.0 : (r == static_cast<std::size_t>(m) ? -1.0 : 1.0);
                CHECK(std::abs(oracle_op(r, c) - Complex{expected}) < 1e-12);
            }
    }
}

TEST_CASE("diffuser block is 2|s><s| - I up to global phase") {
    const auto d = stage_range_operator(build_circuit(cfg(6)), 5, 11).matrix();
    Matrix ref(8);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) ref(r, c) = 2.0 / 8.0 - (r == c ? 1.0 : 0.0);
    // Find the phase from a nonzero entry, then compare everywhere.
    const Complex phase = d(0, 0) / ref(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(d.max_abs_diff(ref * phase) < 1e-12);
}

TEST_CASE("marked-state symmetry") {
    const auto base = stage_distribution(build_circuit(cfg(6)), 11);
    for (int m = 0; m < 8; ++m) {
        const auto p = stage_distribution(build_circuit(cfg(m)), 11);
        for (std::size_t i = 0; i < 8; ++i) {
            // Relabel so the marked outcome maps onto 6.
            const std::size_t j = i == static_cast<std::size_t>(m) ? 6 : (i == 6 ? static_cast<std::size_t>(m) : i);
            CHECK(std::abs(p[i] - base[j]) < 1e-12);
        }
    }
}

TEST_CASE("sampling stages") {
    const auto c = build_circuit(cfg(6));
    SUBCASE("stage 11, 1e5 shots") {
        SeededSampler s(123);
        const auto draws = sample_stage(c, 11, 100000, s);
        double hits = 0;
        for (auto v : draws) hits += v == 6;
        CHECK(std::abs(hits / 1e5 - 0.78125) < 0.01);
    }
    SUBCASE("stage 1 values stay in range") {
        SeededSampler s(1);
        for (auto v : sample_stage(c, 1, 10, s)) CHECK(v < 8);
    }
    SUBCASE("two iterations, 100 shots lands near the amplified value") {
        const auto c2 = build_circuit(cfg(6, 2));
        SeededSampler s(2);
        double hits = 0;
        for (auto v : sample_stage(c2, 21, 100, s)) hits += v == 6;
        // 5 sigma around 121/128 at 100 shots.
        CHECK(std::abs(hits / 100.0 - 121.0 / 128.0) < 5 * 0.0227);
    }
}

TEST_CASE("full_trace") {
    const auto t = full_trace(cfg(6, 1, 100, 9));
    REQUIRE(t.stage_count() == 11);
    for (std::size_t k = 1; k <= 11; ++k) {
        double row = 0.0;
        for (std::size_t v = 0; v < 8; ++v) row += t.proportion(k, v);
        CHECK(std::abs(row - 1.0) < 1e-12);
        CHECK(t.samples[k - 1].size() == 100);
    }
    CHECK(t.flattened_samples().size() == 1100);

    SUBCASE("rows converge to exact distributions at 1e5 shots") {
        const auto big = full_trace(cfg(6, 1, 100000, 4));
        for (std::size_t k = 1; k <= 11; ++k)
            for (std::size_t v = 0; v < 8; ++v)
                CHECK(std::abs(big.proportion(k, v) - big.exact[k - 1][v]) < 0.01);
        for (std::size_t v = 0; v < 8; ++v) CHECK(std::abs(big.proportion(1, v) - 0.125) < 0.01);
    }
    SUBCASE("same seed, same table") {
        const auto again = full_trace(cfg(6, 1, 100, 9));
        CHECK(again.samples == t.samples);
    }
}
