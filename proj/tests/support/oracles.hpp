// oracles.hpp
// Reference computations used only by tests. Nothing here calls into the
// library's linear algebra: the walk oracle expands amplitudes term by term,
// and the Grover oracle builds every column from explicit 2x2 Kronecker
// products and permutation matrices.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// ---------------------------------------------------------------- walk

// Amplitudes keyed by (coin, site) with coin 0 = heads. One step:
//   heads' = (h + t) / sqrt2 moves to site + 1
//   tails' = (h - t) / sqrt2 moves to site - 1
inline std::vector<std::vector<double>> walk_marginals(int n_sites, int start, int steps) {
    const double s = 1.0 / std::sqrt(2.0);
    std::map<std::pair<int, int>, cplx> amps{{{0, start}, 1.0}};
    std::vector<std::vector<double>> out;
    for (int t = 0; t < steps; ++t) {
        std::map<std::pair<int, int>, cplx> next;
        for (int j = 0; j < n_sites; ++j) {
            const cplx h = amps.count({0, j}) ? amps[{0, j}] : cplx{};
            const cplx tl = amps.count({1, j}) ? amps[{1, j}] : cplx{};
            next[{0, (j + 1) % n_sites}] += s * (h + tl);
            next[{1, (j - 1 + n_sites) % n_sites}] += s * (h - tl);
        }
        amps = std::move(next);
        std::vector<double> p(static_cast<std::size_t>(n_sites), 0.0);
        for (const auto& [key, a] : amps) p[static_cast<std::size_t>(key.second)] += std::norm(a);
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------- grover

using Mat8 = std::array<std::array<cplx, 8>, 8>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 id2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
inline Mat2 had2() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{{s, s}, {s, -s}}};
}
inline Mat2 not2() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }

// q3 (x) q2 (x) q1: q3 is the most significant index bit.
inline Mat8 kron3(const Mat2& q3, const Mat2& q2, const Mat2& q1) {
    Mat8 m{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            m[r][c] = q3[(r >> 2) & 1][(c >> 2) & 1] * q2[(r >> 1) & 1][(c >> 1) & 1] *
                      q1[r & 1][c & 1];
    return m;
}

// Toffoli with controls q1, q2 and target q3: swaps |011> and |111>.
inline Mat8 toffoli() {
    Mat8 m{};
    for (int i = 0; i < 8; ++i) m[i][i] = 1.0;
    m[3][3] = m[7][7] = 0.0;
    m[3][7] = m[7][3] = 1.0;
    return m;
}

inline Mat8 mul(const Mat8& a, const Mat8& b) {
    Mat8 m{};
    for (int r = 0; r < 8; ++r)
        for (int k = 0; k < 8; ++k)
            for (int c = 0; c < 8; ++c) m[r][c] += a[r][k] * b[k][c];
    return m;
}

// The eleven stage operators of the one-iteration circuit for marking 6,
// written out column by column from the circuit diagram (rails q1, q2, q3).
inline std::vector<Mat8> fig1_stages() {
    const Mat2 I = id2(), H = had2(), X = not2();
    return {
        kron3(H, H, H),  //  1
        kron3(H, I, X),  //  2  X q1, H q3
        toffoli(),       //  3
        kron3(H, I, X),  //  4
        kron3(H, H, H),  //  5
        kron3(X, X, X),  //  6
        kron3(H, I, I),  //  7
        toffoli(),       //  8
        kron3(H, I, I),  //  9
        kron3(X, X, X),  // 10
        kron3(H, H, H),  // 11
    };
}

// Born probabilities of |000> pushed through `stages[0..k)`.
inline std::array<double, 8> grover_probs(const std::vector<Mat8>& stages, std::size_t k) {
    std::array<cplx, 8> v{};
    v[0] = 1.0;
    for (std::size_t s = 0; s < k; ++s) {
        std::array<cplx, 8> w{};
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) w[r] += stages[s][r][c] * v[c];
        v = w;
    }
    std::array<double, 8> p{};
    for (int i = 0; i < 8; ++i) p[i] = std::norm(v[i]);
    return p;
}

// Textbook amplitude recursion for N = 8 with one marked item: after the
// uniform superposition, each iteration maps (marked a, others b) to the
// inversion about the mean of (-a, b, ..., b).
inline double amplified_success(int iterations) {
    double a = 1.0 / std::sqrt(8.0);
    double b = a;
    for (int i = 0; i < iterations; ++i) {
        const double mean = (-a + 7.0 * b) / 8.0;
        a = 2.0 * mean + a;
        b = 2.0 * mean - b;
    }
    return a * a;
}

}  // namespace oracle
