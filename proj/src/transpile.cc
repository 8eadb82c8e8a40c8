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

#include "walkqed/transpile.h"

#include <algorithm>
#include <cmath>

namespace walkqed {

namespace {

using Ops = std::vector<Operation>;

bool is_half_pi_mod_2pi(double a) {
    return std::abs(std::remainder(a - kHalfPi, 2 * kPi)) < 1e-12;
}

bool touches(const Operation &op, std::size_t q) {
    return std::find(op.qubits.begin(), op.qubits.end(), q) != op.qubits.end();
}

class Lowering {
   public:
    explicit Lowering(const TranspileOptions &options) : options_(options) {
    }

    void lower(const Operation &op) {
        const auto &q = op.qubits;
        double a = op.gate.angle;
        switch (op.gate.type) {
            case GateType::RZ:
                emit(GateKind::rz(a), {q[0]});
                break;
            case GateType::RX:
                if (is_half_pi_mod_2pi(a)) {
                    emit(GateKind::rx(kHalfPi), {q[0]});
                } else {
                    // RX(a) = H RZ(a) H.
                    hadamard(q[0]);
                    emit(GateKind::rz(a), {q[0]});
                    hadamard(q[0]);
                }
                break;
            case GateType::H:
                hadamard(q[0]);
                break;
            case GateType::X:
                emit(GateKind::rx(kHalfPi), {q[0]});
                emit(GateKind::rx(kHalfPi), {q[0]});
                break;
            case GateType::CZ:
                emit(GateKind::cz(), {q[0], q[1]});
                break;
            case GateType::CNOT:
                cnot(q[0], q[1]);
                break;
            case GateType::SWAP:
                cnot(q[0], q[1]);
                cnot(q[1], q[0]);
                cnot(q[0], q[1]);
                break;
            case GateType::ISWAP:
                if (options_.fusion == FusionTarget::ISwap) {
                    out_.push_back(op);
                } else {
                    // ISWAP ~ H_a . CNOT(a->b) . CNOT(b->a) . (S_a (x) H S_b).
                    emit(GateKind::rz(kHalfPi), {q[0]});
                    emit(GateKind::rz(kHalfPi), {q[1]});
                    hadamard(q[1]);
                    cnot(q[1], q[0]);
                    cnot(q[0], q[1]);
                    hadamard(q[0]);
                }
                break;
            case GateType::CPHASE:
                // RZ_a(a/2) RZ_b(a/2) exp(i a/4 ZZ).
                emit(GateKind::rz(a / 2), {q[0]});
                emit(GateKind::rz(a / 2), {q[1]});
                cnot(q[0], q[1]);
                emit(GateKind::rz(-a / 2), {q[1]});
                cnot(q[0], q[1]);
                break;
            case GateType::RXXYY:
                // exp(-i a/4 XX) exp(-i a/4 YY); each factor is a ZZ rotation in a rotated frame.
                hadamard(q[0]);
                hadamard(q[1]);
                zz_rotation(q[0], q[1], a / 2);
                hadamard(q[0]);
                hadamard(q[1]);
                lower({GateKind::rx(-kHalfPi), {q[0]}});
                lower({GateKind::rx(-kHalfPi), {q[1]}});
                zz_rotation(q[0], q[1], a / 2);
                emit(GateKind::rx(kHalfPi), {q[0]});
                emit(GateKind::rx(kHalfPi), {q[1]});
                break;
        }
    }

    /// SWAP . CNOT(c -> t) on one pair.
    void fused_cnot_swap(std::size_t c, std::size_t t) {
        if (options_.fusion == FusionTarget::ISwap) {
            // SWAP . CNOT(c->t) ~ H_c . ISWAP . (S^dagger_c (x) S^dagger H_t).
            hadamard(t);
            emit(GateKind::rz(-kHalfPi), {t});
            emit(GateKind::rz(-kHalfPi), {c});
            out_.push_back({GateKind::iswap(), {c, t}});
            hadamard(c);
        } else {
            cnot(t, c);
            cnot(c, t);
        }
    }

    Ops take() {
        return std::move(out_);
    }

   private:
    void emit(GateKind g, std::vector<std::size_t> qubits) {
        out_.push_back({g, std::move(qubits)});
    }

    void hadamard(std::size_t q) {
        emit(GateKind::rz(kHalfPi), {q});
        emit(GateKind::rx(kHalfPi), {q});
        emit(GateKind::rz(options_.corrupt_hadamard_rule ? -kHalfPi : kHalfPi), {q});
    }

    void cnot(std::size_t c, std::size_t t) {
        hadamard(t);
        emit(GateKind::cz(), {c, t});
        hadamard(t);
    }

    // exp(-i (angle/2) ZZ).
    void zz_rotation(std::size_t a, std::size_t b, double angle) {
        cnot(a, b);
        emit(GateKind::rz(angle), {b});
        cnot(a, b);
    }

    const TranspileOptions &options_;
    Ops out_;
};

Ops merge_rz(const Ops &ops, std::size_t qubit_count) {
    Ops out;
    std::vector<std::optional<double>> pending(qubit_count);
    auto flush = [&](std::size_t q) {
        if (pending[q]) {
            double a = std::remainder(*pending[q], 2 * kPi);
            if (std::abs(a) > 1e-12) {
                out.push_back({GateKind::rz(a), {q}});
            }
            pending[q].reset();
        }
    };
    for (const auto &op : ops) {
        if (op.gate.type == GateType::RZ) {
            std::size_t q = op.qubits[0];
            pending[q] = pending[q].value_or(0.0) + op.gate.angle;
            continue;
        }
        for (auto q : op.qubits) {
            flush(q);
        }
        out.push_back(op);
    }
    for (std::size_t q = 0; q < qubit_count; q++) {
        flush(q);
    }
    return out;
}

Circuit pack_as_late_as_possible(const Ops &ops, std::size_t qubit_count) {
    std::vector<std::size_t> layer_from_end(ops.size());
    std::vector<std::size_t> next_free(qubit_count, 0);
    std::size_t depth = 0;
    for (std::size_t i = ops.size(); i-- > 0;) {
        std::size_t layer = 0;
        for (auto q : ops[i].qubits) {
            layer = std::max(layer, next_free[q]);
        }
        layer_from_end[i] = layer;
        for (auto q : ops[i].qubits) {
            next_free[q] = layer + 1;
        }
        depth = std::max(depth, layer + 1);
    }
    std::vector<Moment> moments(depth);
    for (std::size_t i = 0; i < ops.size(); i++) {
        moments[depth - 1 - layer_from_end[i]].push_back(ops[i]);
    }
    Circuit out(qubit_count);
    for (auto &m : moments) {
        out.append_moment(std::move(m));
    }
    return out;
}

}  // namespace

Circuit transpile(const Circuit &c, const Topology &t, const TranspileOptions &options) {
    if (t.qubit_count != c.qubit_count()) {
        throw std::invalid_argument("topology and circuit register sizes differ");
    }
    Ops input = c.operations();
    for (const auto &op : input) {
        if (op.qubits.size() == 2 && !t.adjacent(op.qubits[0], op.qubits[1])) {
            throw TopologyViolation(
                "topology violation: " + op.gate.str() + " on uncoupled qubits " + std::to_string(op.qubits[0]) +
                " and " + std::to_string(op.qubits[1]));
        }
    }

    Lowering lowering(options);
    std::vector<bool> consumed(input.size(), false);
    for (std::size_t i = 0; i < input.size(); i++) {
        if (consumed[i]) {
            continue;
        }
        const auto &op = input[i];
        if (op.gate.type == GateType::CNOT) {
            std::size_t ctl = op.qubits[0];
            std::size_t tgt = op.qubits[1];
            // Next operation touching either qubit.
            std::size_t j = i + 1;
            while (j < input.size() && !touches(input[j], ctl) && !touches(input[j], tgt)) {
                j++;
            }
            if (j < input.size() && input[j].gate.type == GateType::SWAP && touches(input[j], ctl) &&
                touches(input[j], tgt)) {
                lowering.fused_cnot_swap(ctl, tgt);
                consumed[j] = true;
                continue;
            }
        }
        lowering.lower(op);
    }

    Ops lowered = lowering.take();
    if (options.merge_rz) {
        lowered = merge_rz(lowered, c.qubit_count());
    }
    Circuit out = pack_as_late_as_possible(lowered, c.qubit_count());
    for (const auto &[k, v] : c.labels()) {
        out.set_label(k, v);
    }
    return out;
}

ComplexMatrix circuit_unitary(const Circuit &c) {
    std::size_t n = c.qubit_count();
    if (n > kMaxQubits) {
        throw std::invalid_argument("register too large for a dense unitary");
    }
    std::size_t dim = std::size_t{1} << n;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto &op : c.operations()) {
        u = embed(matrix_of(op.gate), op.qubits, n) * u;
    }
    return u;
}

MakhlinInvariants makhlin_invariants(const ComplexMatrix &u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw std::invalid_argument("Makhlin invariants need a 4x4 matrix");
    }
    if (!is_unitary(u)) {
        throw std::invalid_argument("Makhlin invariants need a unitary");
    }
    const Complex i{0.0, 1.0};
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix magic(4, 4);
    magic << 1, 0, 0, i,  //
        0, i, 1, 0,       //
        0, i, -1, 0,      //
        1, 0, 0, -i;
    magic *= r;
    ComplexMatrix ub = magic.adjoint() * u * magic;
    ComplexMatrix m = ub.transpose() * ub;
    Complex det = u.determinant();
    Complex tr = m.trace();
    Complex tr2 = (m * m).trace();
    MakhlinInvariants out;
    out.g1 = tr * tr / (16.0 * det);
    out.g2 = ((tr * tr - tr2) / (4.0 * det)).real();
    return out;
}

EquivalenceReport equivalent_up_to_global_phase(const ComplexMatrix &u, const ComplexMatrix &v, double tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("matrix dimensions differ");
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    Complex phase = 1.0;
    if (std::abs(v(r, c)) > 0 && std::abs(u(r, c)) > 0) {
        phase = u(r, c) / v(r, c);
        phase /= std::abs(phase);
    }
    EquivalenceReport report;
    report.global_phase = phase;
    report.max_entry_deviation = (u - phase * v).cwiseAbs().maxCoeff();
    report.verdict = report.max_entry_deviation < tol;
    if (u.rows() == 4 && u.cols() == 4 && is_unitary(u) && is_unitary(v)) {
        report.lhs_invariants = makhlin_invariants(u);
        report.rhs_invariants = makhlin_invariants(v);
    }
    return report;
}

CircuitMetrics metrics(const Circuit &c) {
    CircuitMetrics m;
    for (const auto &moment : c.moments()) {
        bool timed = false;
        bool two_qubit = false;
        for (const auto &op : moment) {
            if (op.gate.type == GateType::CZ) {
                m.cz_count++;
            }
            if (op.gate.type == GateType::RX) {
                m.rx_count++;
            }
            if (op.gate.type != GateType::RZ) {
                timed = true;
            }
            if (op.qubits.size() == 2) {
                two_qubit = true;
            }
        }
        m.moment_depth += timed;
        m.two_qubit_depth += two_qubit;
    }
    return m;
}

}  // namespace walkqed
