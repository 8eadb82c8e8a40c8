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

#ifndef WALKQED_LINALG_H
#define WALKQED_LINALG_H

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense quantum-state primitives for registers of up to four qubits.
///
/// Basis convention: qubit 0 is the most significant bit of the
/// computational basis index, so for a 3-qubit register |q0 q1 q2> has index
/// 4*q0 + 2*q1 + q2. Gate matrices acting on an ordered target list use the
/// same convention: targets[0] is the most significant bit of the gate's
/// local index.
namespace walkqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxQubits = 4;

/// Largest |entry| of U^dagger U - I.
double unitarity_deviation(const ComplexMatrix &u);
bool is_unitary(const ComplexMatrix &u, double tol = 1e-10);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Lifts a 2^k x 2^k gate on `targets` to the full 2^n x 2^n register.
ComplexMatrix embed(const ComplexMatrix &u, std::span<const std::size_t> targets, std::size_t qubit_count);

class PureState {
   public:
    /// Throws std::invalid_argument unless the length is a power of two and
    /// the squared norm is 1 within 1e-10.
    explicit PureState(ComplexVector amplitudes);

    static PureState basis_state(std::size_t qubit_count, std::size_t index);

    std::size_t qubit_count() const {
        return qubit_count_;
    }
    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    ComplexMatrix projector() const;

   private:
    std::size_t qubit_count_;
    ComplexVector amplitudes_;
};

class DensityMatrix {
   public:
    /// Validates Hermiticity and unit trace (1e-10) and positivity
    /// (smallest eigenvalue >= -1e-9).
    explicit DensityMatrix(ComplexMatrix matrix);

    static DensityMatrix from_pure(const PureState &state);
    static DensityMatrix ground_state(std::size_t qubit_count);
    static DensityMatrix maximally_mixed(std::size_t qubit_count);

    /// Skips validation. For kernels whose output is valid by construction.
    static DensityMatrix assume_valid(ComplexMatrix matrix);

    std::size_t qubit_count() const {
        return qubit_count_;
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    std::size_t dimension() const {
        return static_cast<std::size_t>(matrix_.rows());
    }

    double trace() const;
    double hermiticity_deviation() const;
    double min_eigenvalue() const;

   private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix matrix, Unchecked);

    std::size_t qubit_count_;
    ComplexMatrix matrix_;
};

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

ComplexMatrix pauli_matrix(Pauli p);

class PauliString {
   public:
    /// Parses labels such as "IZX"; character k labels qubit k.
    explicit PauliString(std::string_view labels);

    std::size_t size() const {
        return labels_.size();
    }
    Pauli operator[](std::size_t k) const {
        return labels_[k];
    }
    std::string str() const;
    ComplexMatrix matrix() const;

   private:
    std::vector<Pauli> labels_;
};

DensityMatrix apply_unitary(const DensityMatrix &rho, const ComplexMatrix &u, std::span<const std::size_t> targets);

/// Throws when sum K^dagger K deviates from I by more than 1e-10.
DensityMatrix apply_kraus(
    const DensityMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> targets);

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);

/// Outcome probabilities over 2^|targets| bitstrings. The first listed target
/// is the leftmost (most significant) bit of the outcome index.
std::vector<double> z_basis_distribution(const DensityMatrix &rho, std::span<const std::size_t> targets);

/// Tr(rho P). Throws std::domain_error if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix &rho, const PauliString &p);

/// <psi|rho|psi>.
double pure_state_fidelity(const DensityMatrix &rho, const PureState &target);

/// In-place kernels used by the circuit simulator. They trust their inputs
/// beyond cheap shape checks.
namespace kernels {

/// rho <- U rho U^dagger with U acting on `targets`.
void conjugate(ComplexMatrix &rho, const ComplexMatrix &u, std::span<const std::size_t> targets, std::size_t qubit_count);

/// rho <- (1-p) rho + p (I/d (x) Tr_targets rho), d = 2^|targets|.
void depolarize(ComplexMatrix &rho, double p, std::span<const std::size_t> targets, std::size_t qubit_count);

}  // namespace kernels

}  // namespace walkqed

#endif
