// Copyright 2026 The walkqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "walkqed/linalg.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace walkqed {

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        k++;
    }
    return k;
}

void check_targets(std::span<const std::size_t> targets, std::size_t qubit_count) {
    if (targets.empty()) {
        throw std::invalid_argument("empty target list");
    }
    for (std::size_t i = 0; i < targets.size(); i++) {
        if (targets[i] >= qubit_count) {
            throw std::out_of_range("qubit index " + std::to_string(targets[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate target index " + std::to_string(targets[i]));
            }
        }
    }
}

// Register bit for qubit q (qubit 0 is the most significant bit).
std::size_t qubit_bit(std::size_t q, std::size_t qubit_count) {
    return std::size_t{1} << (qubit_count - 1 - q);
}

// Offset of each local sub-index within the register index.
std::vector<std::size_t> local_offsets(std::span<const std::size_t> targets, std::size_t qubit_count) {
    std::size_t k = targets.size();
    std::vector<std::size_t> out(std::size_t{1} << k, 0);
    for (std::size_t i = 0; i < out.size(); i++) {
        for (std::size_t j = 0; j < k; j++) {
            if ((i >> (k - 1 - j)) & 1) {
                out[i] |= qubit_bit(targets[j], qubit_count);
            }
        }
    }
    return out;
}

// Register indices with every target bit cleared.
std::vector<std::size_t> base_indices(std::span<const std::size_t> targets, std::size_t qubit_count) {
    std::size_t mask = 0;
    for (auto t : targets) {
        mask |= qubit_bit(t, qubit_count);
    }
    std::vector<std::size_t> out;
    std::size_t dim = std::size_t{1} << qubit_count;
    out.reserve(dim >> targets.size());
    for (std::size_t x = 0; x < dim; x++) {
        if ((x & mask) == 0) {
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace

double unitarity_deviation(const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        return INFINITY;
    }
    ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    return unitarity_deviation(u) <= tol;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix embed(const ComplexMatrix &u, std::span<const std::size_t> targets, std::size_t qubit_count) {
    check_targets(targets, qubit_count);
    std::size_t local_dim = std::size_t{1} << targets.size();
    if (static_cast<std::size_t>(u.rows()) != local_dim || static_cast<std::size_t>(u.cols()) != local_dim) {
        throw std::invalid_argument("gate dimension does not match target count");
    }
    std::size_t dim = std::size_t{1} << qubit_count;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    auto offsets = local_offsets(targets, qubit_count);
    for (auto b : base_indices(targets, qubit_count)) {
        for (std::size_t i = 0; i < local_dim; i++) {
            for (std::size_t j = 0; j < local_dim; j++) {
                out(b + offsets[i], b + offsets[j]) = u(i, j);
            }
        }
    }
    return out;
}

PureState::PureState(ComplexVector amplitudes) : qubit_count_(0), amplitudes_(std::move(amplitudes)) {
    auto n = static_cast<std::size_t>(amplitudes_.size());
    if (!is_power_of_two(n) || n < 2) {
        throw std::invalid_argument("state length must be a power of two >= 2");
    }
    qubit_count_ = log2_exact(n);
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state is not normalized");
    }
}

PureState PureState::basis_state(std::size_t qubit_count, std::size_t index) {
    if (qubit_count == 0 || qubit_count > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (index >= (std::size_t{1} << qubit_count)) {
        throw std::invalid_argument("basis index out of range");
    }
    ComplexVector v = ComplexVector::Zero(std::size_t{1} << qubit_count);
    v(index) = 1.0;
    return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const {
    return amplitudes_ * amplitudes_.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, Unchecked)
    : qubit_count_(log2_exact(static_cast<std::size_t>(matrix.rows()))), matrix_(std::move(matrix)) {
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : qubit_count_(0), matrix_(std::move(matrix)) {
    auto n = static_cast<std::size_t>(matrix_.rows());
    if (matrix_.rows() != matrix_.cols() || !is_power_of_two(n) || n < 2) {
        throw std::invalid_argument("density matrix must be square with power-of-two dimension");
    }
    qubit_count_ = log2_exact(n);
    if (hermiticity_deviation() > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    if (min_eigenvalue() < -1e-9) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &state) {
    return DensityMatrix(state.projector(), Unchecked{});
}

DensityMatrix DensityMatrix::ground_state(std::size_t qubit_count) {
    return from_pure(PureState::basis_state(qubit_count, 0));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubit_count) {
    std::size_t dim = std::size_t{1} << qubit_count;
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix matrix) {
    return DensityMatrix(std::move(matrix), Unchecked{});
}

double DensityMatrix::trace() const {
    return matrix_.trace().real();
}

double DensityMatrix::hermiticity_deviation() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

ComplexMatrix pauli_matrix(Pauli p) {
    ComplexMatrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

PauliString::PauliString(std::string_view labels) {
    if (labels.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    for (char c : labels) {
        switch (c) {
            case 'I':
            case 'X':
            case 'Y':
            case 'Z':
                labels_.push_back(static_cast<Pauli>(c));
                break;
            default:
                throw std::invalid_argument(std::string("bad Pauli label '") + c + "'");
        }
    }
}

std::string PauliString::str() const {
    std::string out;
    for (auto p : labels_) {
        out.push_back(static_cast<char>(p));
    }
    return out;
}

ComplexMatrix PauliString::matrix() const {
    ComplexMatrix out = pauli_matrix(labels_[0]);
    for (std::size_t k = 1; k < labels_.size(); k++) {
        out = kron(out, pauli_matrix(labels_[k]));
    }
    return out;
}

namespace kernels {

namespace {

// Fixed-capacity index layout so the hot kernels never allocate.
struct Layout {
    std::array<std::size_t, 16> offsets{};
    std::array<std::size_t, 16> bases{};
    std::size_t local_dim = 0;
    std::size_t base_count = 0;
};

Layout make_layout(std::span<const std::size_t> targets, std::size_t qubit_count) {
    if (qubit_count > kMaxQubits) {
        throw std::invalid_argument("register too large for dense kernels");
    }
    Layout l;
    std::size_t k = targets.size();
    l.local_dim = std::size_t{1} << k;
    std::size_t mask = 0;
    for (std::size_t i = 0; i < l.local_dim; i++) {
        for (std::size_t j = 0; j < k; j++) {
            if ((i >> (k - 1 - j)) & 1) {
                l.offsets[i] |= qubit_bit(targets[j], qubit_count);
            }
        }
    }
    for (auto t : targets) {
        mask |= qubit_bit(t, qubit_count);
    }
    for (std::size_t x = 0; x < (std::size_t{1} << qubit_count); x++) {
        if ((x & mask) == 0) {
            l.bases[l.base_count++] = x;
        }
    }
    return l;
}

bool is_diagonal(const ComplexMatrix &u) {
    for (Eigen::Index i = 0; i < u.rows(); i++) {
        for (Eigen::Index j = 0; j < u.cols(); j++) {
            if (i != j && u(i, j) != Complex(0)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

void conjugate(ComplexMatrix &rho, const ComplexMatrix &u, std::span<const std::size_t> targets, std::size_t qubit_count) {
    Layout l = make_layout(targets, qubit_count);
    std::size_t dim = static_cast<std::size_t>(rho.rows());

    // Phase gates (RZ, CZ, CPHASE) only rescale entries.
    if (is_diagonal(u)) {
        std::array<Complex, 16> phase;
        for (std::size_t bi = 0; bi < l.base_count; bi++) {
            for (std::size_t i = 0; i < l.local_dim; i++) {
                phase[l.bases[bi] + l.offsets[i]] = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
            }
        }
        for (std::size_t c = 0; c < dim; c++) {
            Complex pc = std::conj(phase[c]);
            for (std::size_t r = 0; r < dim; r++) {
                rho(r, c) *= phase[r] * pc;
            }
        }
        return;
    }

    Complex buf[16];
    // Left: rho <- U rho, column by column.
    for (std::size_t c = 0; c < dim; c++) {
        for (std::size_t bi = 0; bi < l.base_count; bi++) {
            std::size_t b = l.bases[bi];
            for (std::size_t j = 0; j < l.local_dim; j++) {
                buf[j] = rho(b + l.offsets[j], c);
            }
            for (std::size_t i = 0; i < l.local_dim; i++) {
                Complex acc = 0;
                for (std::size_t j = 0; j < l.local_dim; j++) {
                    acc += u(i, j) * buf[j];
                }
                rho(b + l.offsets[i], c) = acc;
            }
        }
    }
    // Right: rho <- rho U^dagger, row by row.
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t bi = 0; bi < l.base_count; bi++) {
            std::size_t b = l.bases[bi];
            for (std::size_t j = 0; j < l.local_dim; j++) {
                buf[j] = rho(r, b + l.offsets[j]);
            }
            for (std::size_t i = 0; i < l.local_dim; i++) {
                Complex acc = 0;
                for (std::size_t j = 0; j < l.local_dim; j++) {
                    acc += std::conj(u(i, j)) * buf[j];
                }
                rho(r, b + l.offsets[i]) = acc;
            }
        }
    }
}

void depolarize(ComplexMatrix &rho, double p, std::span<const std::size_t> targets, std::size_t qubit_count) {
    Layout l = make_layout(targets, qubit_count);
    double d = static_cast<double>(l.local_dim);
    // Each (br, bc) pair owns a disjoint d x d block of rho.
    for (std::size_t r = 0; r < l.base_count; r++) {
        for (std::size_t c = 0; c < l.base_count; c++) {
            std::size_t br = l.bases[r];
            std::size_t bc = l.bases[c];
            Complex s = 0;
            for (std::size_t i = 0; i < l.local_dim; i++) {
                s += rho(br + l.offsets[i], bc + l.offsets[i]);
            }
            for (std::size_t i = 0; i < l.local_dim; i++) {
                for (std::size_t j = 0; j < l.local_dim; j++) {
                    rho(br + l.offsets[i], bc + l.offsets[j]) *= (1.0 - p);
                }
                rho(br + l.offsets[i], bc + l.offsets[i]) += s * (p / d);
            }
        }
    }
}

}  // namespace kernels

DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u, std::span<const std::size_t> targets) {
    check_targets(targets, rho.qubit_count());
    std::size_t local_dim = std::size_t{1} << targets.size();
    if (static_cast<std::size_t>(u.rows()) != local_dim || static_cast<std::size_t>(u.cols()) != local_dim) {
        throw std::invalid_argument("unitary dimension does not match target count");
    }
    if (!is_unitary(u)) {
        throw std::invalid_argument("matrix is not unitary");
    }
    ComplexMatrix m = rho.matrix();
    kernels::conjugate(m, u, targets, rho.qubit_count());
    return DensityMatrix::assume_valid(std::move(m));
}

DensityMatrix apply_kraus(
    const DensityMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> targets) {
    check_targets(targets, rho.qubit_count());
    if (kraus.empty()) {
        throw std::invalid_argument("empty Kraus set");
    }
    std::size_t local_dim = std::size_t{1} << targets.size();
    ComplexMatrix completeness = ComplexMatrix::Zero(local_dim, local_dim);
    for (const auto &k : kraus) {
        if (static_cast<std::size_t>(k.rows()) != local_dim || static_cast<std::size_t>(k.cols()) != local_dim) {
            throw std::invalid_argument("Kraus operator dimension does not match target count");
        }
        completeness += k.adjoint() * k;
    }
    double dev = (completeness - ComplexMatrix::Identity(local_dim, local_dim)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw std::invalid_argument("Kraus operators violate the completeness relation");
    }
    ComplexMatrix out = ComplexMatrix::Zero(rho.dimension(), rho.dimension());
    for (const auto &k : kraus) {
        ComplexMatrix full = embed(k, targets, rho.qubit_count());
        out += full * rho.matrix() * full.adjoint();
    }
    return DensityMatrix::assume_valid(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    std::size_t n = rho.qubit_count();
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs at least one kept qubit");
    }
    check_targets(keep, n);
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; q++) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    auto keep_offsets = local_offsets(keep, n);
    std::vector<std::size_t> traced_offsets{0};
    if (!traced.empty()) {
        traced_offsets = local_offsets(traced, n);
    }
    std::size_t kd = keep_offsets.size();
    ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
    for (std::size_t i = 0; i < kd; i++) {
        for (std::size_t j = 0; j < kd; j++) {
            Complex s = 0;
            for (auto t : traced_offsets) {
                s += rho.matrix()(keep_offsets[i] + t, keep_offsets[j] + t);
            }
            out(i, j) = s;
        }
    }
    return DensityMatrix::assume_valid(std::move(out));
}

std::vector<double> z_basis_distribution(const DensityMatrix &rho, std::span<const std::size_t> targets) {
    std::size_t n = rho.qubit_count();
    check_targets(targets, n);
    std::size_t k = targets.size();
    std::vector<double> out(std::size_t{1} << k, 0.0);
    for (std::size_t x = 0; x < rho.dimension(); x++) {
        std::size_t outcome = 0;
        for (std::size_t j = 0; j < k; j++) {
            outcome = (outcome << 1) | ((x & qubit_bit(targets[j], n)) ? 1 : 0);
        }
        out[outcome] += rho.matrix()(x, x).real();
    }
    for (auto &p : out) {
        p = std::max(p, 0.0);
    }
    return out;
}

double expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.size() != rho.qubit_count()) {
        throw std::invalid_argument("Pauli string length does not match register");
    }
    Complex t = (rho.matrix() * p.matrix()).trace();
    if (std::abs(t.imag()) > 1e-10) {
        throw std::domain_error("expectation has a non-negligible imaginary part");
    }
    return t.real();
}

double pure_state_fidelity(const DensityMatrix &rho, const PureState &target) {
    if (rho.qubit_count() != target.qubit_count()) {
        throw std::invalid_argument("state dimensions differ");
    }
    const auto &v = target.amplitudes();
    double f = v.dot(rho.matrix() * v).real();
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace walkqed
