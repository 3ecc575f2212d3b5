#include "qsonify/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qsonify {

namespace {

double squared_norm(std::span<const Complex> amps) {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    return total;
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw DimensionError("state vector must have positive dimension");
    const double n2 = squared_norm(amplitudes_);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
        throw NormalizationError("state vector is not normalized (squared norm " +
                                 std::to_string(n2) + ")");
    }
}

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
    if (index >= dimension) throw DimensionError("basis index out of range");
    std::vector<Complex> amps(dimension);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm() const { return std::sqrt(squared_norm(amplitudes_)); }

// --------------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t dimension) : dim_(dimension), data_(dimension * dimension) {}

Matrix::Matrix(std::size_t dimension, std::vector<Complex> row_major)
    : dim_(dimension), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) throw DimensionError("matrix data size is not dimension^2");
}

Matrix Matrix::identity(std::size_t dimension) {
    Matrix m(dimension);
    for (std::size_t i = 0; i < dimension; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (dim_ != rhs.dim_) throw DimensionError("matrix product dimension mismatch");
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == Complex{}) continue;
            for (std::size_t c = 0; c < dim_; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (dim_ != rhs.dim_) throw DimensionError("matrix sum dimension mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + rhs * Complex{-1.0}; }

Matrix Matrix::operator*(Complex scale) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= scale;
    return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (dim_ != other.dim_) throw DimensionError("matrix comparison dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t da = a.dimension();
    const std::size_t db = b.dimension();
    Matrix out(da * db);
    for (std::size_t ar = 0; ar < da; ++ar)
        for (std::size_t ac = 0; ac < da; ++ac) {
            const Complex x = a(ar, ac);
            if (x == Complex{}) continue;
            for (std::size_t br = 0; br < db; ++br)
                for (std::size_t bc = 0; bc < db; ++bc)
                    out(ar * db + br, ac * db + bc) = x * b(br, bc);
        }
    return out;
}

// -------------------------------------------------------------- UnitaryMatrix

double unitarity_error(const Matrix& u) {
    return (u.adjoint() * u).max_abs_diff(Matrix::identity(u.dimension()));
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.dimension() == 0) throw DimensionError("unitary must have positive dimension");
    const double err = unitarity_error(m_);
    if (!(err <= kUnitaryTolerance)) {
        throw std::invalid_argument("matrix is not unitary (max |U^dagger U - I| = " +
                                    std::to_string(err) + ")");
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dimension) {
    return UnitaryMatrix(Matrix::identity(dimension), Trusted{});
}

UnitaryMatrix UnitaryMatrix::hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return UnitaryMatrix(Matrix(2, {s, s, s, -s}));
}

UnitaryMatrix UnitaryMatrix::pauli_x() { return UnitaryMatrix(Matrix(2, {0.0, 1.0, 1.0, 0.0})); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
    return UnitaryMatrix(m_ * rhs.m_);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), Trusted{}); }

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    // The tensor product of unitaries is unitary.
    return UnitaryMatrix(kron(a.m_, b.m_), UnitaryMatrix::Trusted{});
}

StateVector kron(const StateVector& a, const StateVector& b) {
    std::vector<Complex> out;
    out.reserve(a.dimension() * b.dimension());
    for (const auto& x : a.amplitudes())
        for (const auto& y : b.amplitudes()) out.push_back(x * y);
    return StateVector(std::move(out));
}

StateVector apply(const UnitaryMatrix& u, const StateVector& psi) {
    const std::size_t n = u.dimension();
    if (n != psi.dimension()) {
        throw DimensionError("cannot apply " + std::to_string(n) + "-dim operator to " +
                             std::to_string(psi.dimension()) + "-dim state");
    }
    std::vector<Complex> out(n);
    for (std::size_t r = 0; r < n; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < n; ++c) acc += u(r, c) * psi[c];
        out[r] = acc;
    }
    return StateVector(std::move(out));
}

// ---------------------------------------------------- ProbabilityDistribution

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probabilities)
    : probs_(std::move(probabilities)) {
    if (probs_.empty()) throw std::invalid_argument("probability distribution is empty");
    bool clamped = false;
    for (auto& p : probs_) {
        if (!std::isfinite(p)) throw std::invalid_argument("probability is not finite");
        if (p < 0.0) {
            if (p < -kClampTolerance)
                throw std::invalid_argument("negative probability " + std::to_string(p));
            p = 0.0;
            clamped = true;
        }
    }
    const double sum = total();
    if (!(std::abs(sum - 1.0) <= kNormTolerance))
        throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
    if (clamped)
        for (auto& p : probs_) p /= sum;
}

double ProbabilityDistribution::total() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

ProbabilityDistribution born_probabilities(const StateVector& psi) {
    std::vector<double> p;
    p.reserve(psi.dimension());
    for (const auto& a : psi.amplitudes()) p.push_back(std::norm(a));
    return ProbabilityDistribution(std::move(p));
}

ProbabilityDistribution marginal_sites(const StateVector& psi, std::size_t n_sites) {
    if (n_sites == 0 || psi.dimension() != 2 * n_sites) {
        throw DimensionError("state of dimension " + std::to_string(psi.dimension()) +
                             " is not coin(2) x " + std::to_string(n_sites) + " sites");
    }
    std::vector<double> p(n_sites);
    for (std::size_t j = 0; j < n_sites; ++j) p[j] = std::norm(psi[j]) + std::norm(psi[n_sites + j]);
    return ProbabilityDistribution(std::move(p));
}

// -------------------------------------------------------------- SeededSampler

double SeededSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t SeededSampler::draw(const ProbabilityDistribution& dist) {
    const double u = uniform();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] <= 0.0) continue;
        cumulative += dist[i];
        last_positive = i;
        if (u < cumulative) return i;
    }
    // u landed past the accumulated total because of rounding.
    return last_positive;
}

std::vector<std::size_t> sample(const ProbabilityDistribution& dist, SeededSampler& sampler,
                                std::size_t shots) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    std::vector<std::size_t> out;
    out.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) out.push_back(sampler.draw(dist));
    return out;
}

}  // namespace qsonify
