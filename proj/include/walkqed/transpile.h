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

#ifndef WALKQED_TRANSPILE_H
#define WALKQED_TRANSPILE_H

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "walkqed/circuit.h"
#include "walkqed/linalg.h"

namespace walkqed {

/// A two-qubit gate acts on qubits that are not coupled in the topology.
class TopologyViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// How a CNOT immediately followed by a SWAP on the same pair is lowered.
enum class FusionTarget {
    /// CNOT(t -> c) then CNOT(c -> t): two CZ gates plus single-qubit frames.
    TwoCz,
    /// One ISWAP dressed with Clifford frames. ISWAP is left in the output, so
    /// the result is only native for iSWAP hardware.
    ISwap,
};

struct TranspileOptions {
    FusionTarget fusion = FusionTarget::TwoCz;
    bool merge_rz = true;
    /// Breaks the Hadamard rewrite on purpose. Negative control for `verify`.
    bool corrupt_hadamard_rule = false;
};

/// Rewrites `c` into RX(pi/2), RZ and CZ, merges runs of RZ on a qubit, and
/// packs the result as-late-as-possible. Labels are carried over.
/// Throws TopologyViolation for a two-qubit gate on uncoupled qubits.
Circuit transpile(const Circuit &c, const Topology &t, const TranspileOptions &options = {});

/// Product of all gates, earliest first. Throws for registers above kMaxQubits.
ComplexMatrix circuit_unitary(const Circuit &c);

/// Local invariants of a two-qubit gate, computed in the magic basis.
struct MakhlinInvariants {
    Complex g1;
    double g2;
};

/// Throws std::invalid_argument for a non-4x4 or non-unitary input.
MakhlinInvariants makhlin_invariants(const ComplexMatrix &u);

struct EquivalenceReport {
    double max_entry_deviation;
    Complex global_phase;
    bool verdict;
    std::optional<MakhlinInvariants> lhs_invariants;
    std::optional<MakhlinInvariants> rhs_invariants;
};

/// Aligns the global phase on the largest-magnitude entry of v and reports
/// max |u - phase * v|.
EquivalenceReport equivalent_up_to_global_phase(const ComplexMatrix &u, const ComplexMatrix &v, double tol);

struct CircuitMetrics {
    std::size_t cz_count = 0;
    std::size_t rx_count = 0;
    /// Moments holding at least one gate with nonzero duration (RZ is virtual).
    std::size_t moment_depth = 0;
    /// Moments holding at least one two-qubit gate.
    std::size_t two_qubit_depth = 0;

    bool operator==(const CircuitMetrics &) const = default;
};

CircuitMetrics metrics(const Circuit &c);

}  // namespace walkqed

#endif
