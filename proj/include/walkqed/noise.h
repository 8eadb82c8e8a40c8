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

#ifndef WALKQED_NOISE_H
#define WALKQED_NOISE_H

#include <cstddef>
#include <vector>

#include "walkqed/circuit.h"
#include "walkqed/linalg.h"

namespace walkqed {

/// Dimension used when converting depolarizing probabilities into gate
/// fidelities. Channel insertion always uses d = 2^(gate qubits).
enum class DepolDimensionConvention {
    /// d = 2 for single-qubit gates, d = 4 for two-qubit gates.
    PerGateSubspace,
    /// d = 4 for both.
    PairSubspace,
};

/// Circuit-level noise: parasitic ZZ phase after every RX(pi/2), exchange
/// rotation after every CZ, and depolarization after both.
struct NoiseModel {
    double delta_phi = 0.0;
    double theta = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    DepolDimensionConvention depol_dimension_convention = DepolDimensionConvention::PerGateSubspace;

    /// delta_phi = -0.027, theta = 0.37, p1 = p2 = 0.0178.
    static NoiseModel fitted_device();

    /// Throws std::invalid_argument for probabilities outside [0, 1] or
    /// non-finite angles.
    void validate() const;

    bool operator==(const NoiseModel &) const = default;
};

/// How the depolarizing parameter is read.
enum class DepolarizingForm {
    /// E(rho) = (1 - p) rho + p I/d; p is the error probability.
    ErrorProbability,
    /// E(rho) = p rho + (1 - p) I/d, the retention-probability form.
    Retention,
};

class DepolarizingChannel {
   public:
    /// Throws std::invalid_argument unless p is in [0, 1] and qubit_count >= 1.
    DepolarizingChannel(double p, std::size_t qubit_count, DepolarizingForm form = DepolarizingForm::ErrorProbability);

    /// Weight of the maximally mixed component.
    double error_probability() const {
        return error_probability_;
    }
    std::size_t qubit_count() const {
        return qubit_count_;
    }
    std::size_t dimension() const {
        return std::size_t{1} << qubit_count_;
    }

    /// Pauli Kraus operators: sqrt(1 - p + p/d^2) I and sqrt(p/d^2) P.
    std::vector<ComplexMatrix> kraus() const;

    /// Direct map on `targets` without building Kraus operators.
    DensityMatrix apply(const DensityMatrix &rho, std::span<const std::size_t> targets) const;

   private:
    double error_probability_;
    std::size_t qubit_count_;
};

DepolarizingChannel depolarizing_channel(double p, std::size_t qubit_count);

enum class NoiseKind { Cphase, Rxxyy, Depolarizing };

/// A noise operation applied right after operation `op_index` of moment
/// `moment` in the base circuit.
struct NoiseInsertion {
    std::size_t moment;
    std::size_t op_index;
    NoiseKind kind;
    double parameter;
    std::vector<std::size_t> qubits;
};

struct NoisyCircuit {
    Circuit base;
    /// Ordered by (moment, op_index), then by insertion order.
    std::vector<NoiseInsertion> insertions;
};

/// After every RX(pi/2) on q: CPHASE(delta_phi) on each coupler incident to q,
/// then single-qubit depolarization p1. After every CZ on (a, b):
/// RXXYY(theta) on (a, b), then two-qubit depolarization p2. RZ is noiseless.
/// Throws std::invalid_argument on a non-native gate.
NoisyCircuit insert_noise(const Circuit &c, const NoiseModel &m, const Topology &t);

/// Runs from |0...0><0...0|.
DensityMatrix simulate(const NoisyCircuit &c);
DensityMatrix simulate(const Circuit &c);

/// 1 - ((d - 1)/d) p.
double xeb_fidelity_from_depolarization(double p, std::size_t d);

/// (Tr(U^dagger U) + |Tr(U_t^dagger U)|^2) / (d (d + 1)).
double average_gate_fidelity(const ComplexMatrix &u, const ComplexMatrix &u_target);

/// (3/10)(1 - cos delta_phi): CPHASE(delta_phi) against identity.
double zz_phase_infidelity(double delta_phi);

/// (12 - 8 cos(theta/2) - 4 cos^2(theta/2)) / 20: RXXYY(theta) against identity.
double exchange_infidelity(double theta);

struct GateFidelityReport {
    double single_qubit_depolarizing_fidelity;
    double single_qubit_zz_infidelity;
    double two_qubit_depolarizing_fidelity;
    double two_qubit_exchange_infidelity;
    /// 1 - (3/4) p2 - exchange infidelity.
    double two_qubit_combined_fidelity;
};

GateFidelityReport fidelity_report(const NoiseModel &m);

}  // namespace walkqed

#endif
