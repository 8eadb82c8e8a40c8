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

#ifndef WALKQED_CIRCUIT_H
#define WALKQED_CIRCUIT_H

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "walkqed/gates.h"

namespace walkqed {

struct Operation {
    GateKind gate;
    std::vector<std::size_t> qubits;

    bool operator==(const Operation &other) const = default;
};

/// Gates that run in the same time step. No qubit appears twice.
using Moment = std::vector<Operation>;

class Circuit {
   public:
    explicit Circuit(std::size_t qubit_count);

    std::size_t qubit_count() const {
        return qubit_count_;
    }
    const std::vector<Moment> &moments() const {
        return moments_;
    }

    /// Adds an operation after everything already in the circuit, reusing the
    /// last moment when it leaves the operation's qubits free.
    Circuit &append(GateKind gate, std::vector<std::size_t> qubits);
    Circuit &append(const Operation &op);
    /// Adds a whole moment. Throws if a qubit is used twice.
    Circuit &append_moment(Moment moment);
    /// Appends every operation of `other` (same register size) in order.
    Circuit &extend(const Circuit &other);

    /// Operations in execution order.
    std::vector<Operation> operations() const;
    std::size_t operation_count() const;

    void set_label(const std::string &key, std::string value);
    const std::map<std::string, std::string> &labels() const {
        return labels_;
    }
    /// Numeric label lookup; throws std::out_of_range if missing.
    std::size_t label_index(const std::string &key) const;

   private:
    void check_operation(const Operation &op) const;

    std::size_t qubit_count_;
    std::vector<Moment> moments_;
    std::map<std::string, std::string> labels_;
};

/// Linear nearest-neighbour coupling map Q0 - Q1 - ... - Q(n-1).
struct Topology {
    std::size_t qubit_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    static Topology chain(std::size_t qubit_count);
    bool adjacent(std::size_t a, std::size_t b) const;
    std::vector<std::pair<std::size_t, std::size_t>> incident_edges(std::size_t q) const;
};

enum class Scheme { Static, Walking };

/// Which data qubit of the walking circuit receives the injected error.
enum class InjectionTarget { FirstChecked, SecondChecked };

/// Labels attached by the builders: "ancilla" and "logical" name the physical
/// qubits to read out at the end of the circuit.
inline constexpr const char *kAncillaLabel = "ancilla";
inline constexpr const char *kLogicalLabel = "logical";

/// Static ancilla on Q2 between data Q1 and Q3 (indices 0, 1, 2). RX(eps) on Q3,
/// then CNOT(Q1 -> Q2), CNOT(Q3 -> Q2). Readout: ancilla Q2, logical Z on Q3.
Circuit build_static_detection(double epsilon);

/// Ancilla starts on Q1, data on Q2 and Q3. RX(eps) on one data qubit, then
/// CNOT(Q2 -> Q1), SWAP(Q1, Q2), CNOT(Q3 -> Q2), SWAP(Q2, Q3). The ancilla ends
/// on Q3 and the code pair on (Q1, Q2).
Circuit build_walking_detection(double epsilon, InjectionTarget target = InjectionTarget::SecondChecked);

Circuit build_detection(Scheme scheme, double epsilon);

enum class TomographyBasis { X, Y, Z };

/// State preparation on Q2, encoding CNOT(Q2 -> Q3), the walking detection
/// cycle, decoding CNOT(Q1 -> Q2), and a basis change on Q1 so that a Z
/// readout of Q1 measures the requested logical Pauli. Labels: "logical" = Q1,
/// "ancilla" = Q3.
Circuit build_tomography_circuit(double theta, double phi, TomographyBasis basis);

/// Single-qubit preparation cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, up to
/// global phase, on `qubit`.
void append_state_preparation(Circuit &c, std::size_t qubit, double theta, double phi);

}  // namespace walkqed

#endif
