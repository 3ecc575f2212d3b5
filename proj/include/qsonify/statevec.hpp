// statevec.hpp
// Small dense complex linear algebra for the walk and Grover simulators:
// Kronecker products, unitary application, Born-rule probabilities and
// seeded sampling over discrete outcome sets.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace qsonify {

using Complex = std::complex<double>;

// Tolerance used when checking unitarity of constructed operators.
inline constexpr double kUnitaryTolerance = 1e-12;
// Largest accepted deviation of a state norm (or a probability sum) from 1.
// Looser than kUnitaryTolerance so that long evolutions can accumulate
// roundoff without being rejected.
inline constexpr double kNormTolerance = 1e-9;
// Born outputs in [-kClampTolerance, 0) are treated as roundoff and clamped.
inline constexpr double kClampTolerance = 1e-14;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NormalizationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Normalized complex amplitude vector.
class StateVector {
public:
    // Throws NormalizationError if the squared norm deviates from 1 by more
    // than kNormTolerance, DimensionError if empty.
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t dimension, std::size_t index);

    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

private:
    std::vector<Complex> amplitudes_;
};

// Row-major dense square matrix without structural guarantees. Used as the
// building block for UnitaryMatrix and for intermediate projector algebra.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dimension);
    Matrix(std::size_t dimension, std::vector<Complex> row_major);

    static Matrix identity(std::size_t dimension);

    std::size_t dimension() const { return dim_; }
    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(Complex scale) const;

    // Largest elementwise |a_ij - b_ij|.
    double max_abs_diff(const Matrix& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);

// A Matrix verified to satisfy U^dagger U = I within kUnitaryTolerance.
class UnitaryMatrix {
public:
    // Throws std::invalid_argument if `m` is not unitary.
    explicit UnitaryMatrix(Matrix m);

    static UnitaryMatrix identity(std::size_t dimension);
    static UnitaryMatrix hadamard();
    static UnitaryMatrix pauli_x();

    std::size_t dimension() const { return m_.dimension(); }
    const Matrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

    UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
    UnitaryMatrix adjoint() const;

private:
    struct Trusted {};
    UnitaryMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

    Matrix m_;

    friend UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);
};

// Largest elementwise deviation of U^dagger U from the identity.
double unitarity_error(const Matrix& u);

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

// Coin-major product: kron(coin, site)[c * dim(site) + s] = coin[c] * site[s].
StateVector kron(const StateVector& a, const StateVector& b);

// Throws DimensionError when u and psi disagree in dimension.
StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

// Nonnegative weights over outcomes 0..n-1 summing to 1.
class ProbabilityDistribution {
public:
    // Empty input throws. Entries in [-kClampTolerance, 0) are clamped to zero and the vector is
    // renormalized; anything more negative, or a sum further than
    // kNormTolerance from 1, throws std::invalid_argument.
    explicit ProbabilityDistribution(std::vector<double> probabilities);

    std::size_t size() const { return probs_.size(); }
    bool empty() const { return probs_.empty(); }
    double operator[](std::size_t outcome) const { return probs_[outcome]; }
    std::span<const double> probabilities() const { return probs_; }

    double total() const;

private:
    std::vector<double> probs_;
};

// p_i = |amplitude_i|^2. Rejects states whose norm is off by > kNormTolerance.
ProbabilityDistribution born_probabilities(const StateVector& psi);

// p(j) = |psi[j]|^2 + |psi[n_sites + j]|^2 for a kron(coin, site) state.
ProbabilityDistribution marginal_sites(const StateVector& psi, std::size_t n_sites);

// Deterministic sampler over discrete distributions. The engine is
// std::mt19937_64 (fully specified by the standard), uniforms take the top 53
// bits of one draw, and outcomes are chosen by inverse-CDF lookup, so the
// draw sequence is identical on every conforming platform.
class SeededSampler {
public:
    static constexpr std::string_view kGeneratorId = "mt19937_64/u53/inverse-cdf";

    explicit SeededSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform in [0, 1).
    double uniform();

    // One outcome index; never returns an outcome with zero probability.
    std::size_t draw(const ProbabilityDistribution& dist);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Throws std::invalid_argument when shots == 0.
std::vector<std::size_t> sample(const ProbabilityDistribution& dist, SeededSampler& sampler,
                                std::size_t shots);

}  // namespace qsonify
