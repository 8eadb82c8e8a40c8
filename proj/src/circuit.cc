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

#include "walkqed/circuit.h"

#include <algorithm>
#include <stdexcept>

namespace walkqed {

Circuit::Circuit(std::size_t qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count == 0) {
        throw std::invalid_argument("circuit needs at least one qubit");
    }
}

void Circuit::check_operation(const Operation &op) const {
    if (op.qubits.size() != arity(op.gate.type)) {
        throw std::invalid_argument(
            op.gate.str() + " expects " + std::to_string(arity(op.gate.type)) + " qubit(s)");
    }
    for (std::size_t i = 0; i < op.qubits.size(); i++) {
        if (op.qubits[i] >= qubit_count_) {
            throw std::out_of_range("qubit " + std::to_string(op.qubits[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; j++) {
            if (op.qubits[i] == op.qubits[j]) {
                throw std::invalid_argument(op.gate.str() + " uses a qubit twice");
            }
        }
    }
}

Circuit &Circuit::append(GateKind gate, std::vector<std::size_t> qubits) {
    return append(Operation{gate, std::move(qubits)});
}

Circuit &Circuit::append(const Operation &op) {
    check_operation(op);
    bool fits = !moments_.empty();
    if (fits) {
        for (const auto &other : moments_.back()) {
            for (auto q : other.qubits) {
                if (std::find(op.qubits.begin(), op.qubits.end(), q) != op.qubits.end()) {
                    fits = false;
                }
            }
        }
    }
    if (!fits) {
        moments_.emplace_back();
    }
    moments_.back().push_back(op);
    return *this;
}

Circuit &Circuit::append_moment(Moment moment) {
    std::vector<bool> used(qubit_count_, false);
    for (const auto &op : moment) {
        check_operation(op);
        for (auto q : op.qubits) {
            if (used[q]) {
                throw std::invalid_argument("qubit " + std::to_string(q) + " appears twice in one moment");
            }
            used[q] = true;
        }
    }
    moments_.push_back(std::move(moment));
    return *this;
}

Circuit &Circuit::extend(const Circuit &other) {
    if (other.qubit_count_ != qubit_count_) {
        throw std::invalid_argument("register sizes differ");
    }
    for (const auto &op : other.operations()) {
        append(op);
    }
    return *this;
}

std::vector<Operation> Circuit::operations() const {
    std::vector<Operation> out;
    for (const auto &m : moments_) {
        out.insert(out.end(), m.begin(), m.end());
    }
    return out;
}

std::size_t Circuit::operation_count() const {
    std::size_t n = 0;
    for (const auto &m : moments_) {
        n += m.size();
    }
    return n;
}

void Circuit::set_label(const std::string &key, std::string value) {
    labels_[key] = std::move(value);
}

std::size_t Circuit::label_index(const std::string &key) const {
    return static_cast<std::size_t>(std::stoul(labels_.at(key)));
}

Topology Topology::chain(std::size_t qubit_count) {
    Topology t;
    t.qubit_count = qubit_count;
    for (std::size_t q = 0; q + 1 < qubit_count; q++) {
        t.edges.emplace_back(q, q + 1);
    }
    return t;
}

bool Topology::adjacent(std::size_t a, std::size_t b) const {
    for (auto [x, y] : edges) {
        if ((x == a && y == b) || (x == b && y == a)) {
            return true;
        }
    }
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> Topology::incident_edges(std::size_t q) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto e : edges) {
        if (e.first == q || e.second == q) {
            out.push_back(e);
        }
    }
    return out;
}

Circuit build_static_detection(double epsilon) {
    Circuit c(3);
    c.append(GateKind::rx(epsilon), {2});
    c.append(GateKind::cnot(), {0, 1});
    c.append(GateKind::cnot(), {2, 1});
    c.set_label(kAncillaLabel, "1");
    c.set_label(kLogicalLabel, "2");
    return c;
}

Circuit build_walking_detection(double epsilon, InjectionTarget target) {
    Circuit c(3);
    // Data qubit "a" starts on Q2 and ends on Q1; "b" starts on Q3 and ends on Q2.
    bool second = target == InjectionTarget::SecondChecked;
    c.append(GateKind::rx(epsilon), {second ? std::size_t{2} : std::size_t{1}});
    c.append(GateKind::cnot(), {1, 0});
    c.append(GateKind::swap(), {0, 1});
    c.append(GateKind::cnot(), {2, 1});
    c.append(GateKind::swap(), {1, 2});
    c.set_label(kAncillaLabel, "2");
    c.set_label(kLogicalLabel, second ? "1" : "0");
    return c;
}

Circuit build_detection(Scheme scheme, double epsilon) {
    return scheme == Scheme::Static ? build_static_detection(epsilon) : build_walking_detection(epsilon);
}

void append_state_preparation(Circuit &c, std::size_t qubit, double theta, double phi) {
    // RX(theta)|0> = cos|0> - i sin|1>; the RZ adds the relative phase e^{i(phi + pi/2)}.
    c.append(GateKind::rx(theta), {qubit});
    c.append(GateKind::rz(phi + kHalfPi), {qubit});
}

Circuit build_tomography_circuit(double theta, double phi, TomographyBasis basis) {
    Circuit c(3);
    append_state_preparation(c, 1, theta, phi);
    c.append(GateKind::cnot(), {1, 2});
    c.append(GateKind::cnot(), {1, 0});
    c.append(GateKind::swap(), {0, 1});
    c.append(GateKind::cnot(), {2, 1});
    c.append(GateKind::swap(), {1, 2});
    c.append(GateKind::cnot(), {0, 1});
    switch (basis) {
        case TomographyBasis::X:
            c.append(GateKind::h(), {0});
            break;
        case TomographyBasis::Y:
            // RX(pi/2)^dagger Z RX(pi/2) = Y.
            c.append(GateKind::rx(kHalfPi), {0});
            break;
        case TomographyBasis::Z:
            break;
    }
    c.set_label(kAncillaLabel, "2");
    c.set_label(kLogicalLabel, "0");
    return c;
}

}  // namespace walkqed
