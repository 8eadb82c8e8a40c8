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

#include "walkqed/noise.h"

#include <cmath>
#include <stdexcept>

#include "walkqed/gates.h"

namespace walkqed {

NoiseModel NoiseModel::fitted_device() {
    NoiseModel m;
    m.delta_phi = -0.027;
    m.theta = 0.37;
    m.p1 = 0.0178;
    m.p2 = 0.0178;
    return m;
}

void NoiseModel::validate() const {
    if (!std::isfinite(delta_phi) || !std::isfinite(theta)) {
        throw std::invalid_argument("noise model angles must be finite");
    }
    if (!(p1 >= 0 && p1 <= 1) || !(p2 >= 0 && p2 <= 1)) {
        throw std::invalid_argument("depolarizing probabilities must lie in [0, 1]");
    }
}

DepolarizingChannel::DepolarizingChannel(double p, std::size_t qubit_count, DepolarizingForm form)
    : error_probability_(0), qubit_count_(qubit_count) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    }
    if (qubit_count == 0 || qubit_count > kMaxQubits) {
        throw std::invalid_argument("depolarizing channel qubit count out of range");
    }
    error_probability_ = form == DepolarizingForm::ErrorProbability ? p : 1.0 - p;
}

std::vector<ComplexMatrix> DepolarizingChannel::kraus() const {
    double d2 = static_cast<double>(dimension() * dimension());
    std::vector<ComplexMatrix> out;
    std::size_t count = std::size_t{1} << (2 * qubit_count_);
    for (std::size_t index = 0; index < count; index++) {
        std::string labels;
        for (std::size_t k = 0; k < qubit_count_; k++) {
            labels.push_back("IXYZ"[(index >> (2 * (qubit_count_ - 1 - k))) & 3]);
        }
        double w = index == 0 ? 1.0 - error_probability_ + error_probability_ / d2 : error_probability_ / d2;
        out.push_back(std::sqrt(w) * PauliString(labels).matrix());
    }
    return out;
}

DensityMatrix DepolarizingChannel::apply(const DensityMatrix &rho, std::span<const std::size_t> targets) const {
    if (targets.size() != qubit_count_) {
        throw std::invalid_argument("target count does not match channel size");
    }
    for (auto t : targets) {
        if (t >= rho.qubit_count()) {
            throw std::out_of_range("target qubit out of range");
        }
    }
    ComplexMatrix m = rho.matrix();
    kernels::depolarize(m, error_probability_, targets, rho.qubit_count());
    return DensityMatrix::assume_valid(std::move(m));
}

DepolarizingChannel depolarizing_channel(double p, std::size_t qubit_count) {
    return DepolarizingChannel(p, qubit_count);
}

NoisyCircuit insert_noise(const Circuit &c, const NoiseModel &m, const Topology &t) {
    m.validate();
    if (t.qubit_count != c.qubit_count()) {
        throw std::invalid_argument("topology and circuit register sizes differ");
    }
    NoisyCircuit out{c, {}};
    const auto &moments = c.moments();
    for (std::size_t mi = 0; mi < moments.size(); mi++) {
        for (std::size_t oi = 0; oi < moments[mi].size(); oi++) {
            const auto &op = moments[mi][oi];
            if (!is_native(op.gate)) {
                throw std::invalid_argument("noise insertion needs native gates, found " + op.gate.str());
            }
            switch (op.gate.type) {
                case GateType::RX: {
                    std::size_t q = op.qubits[0];
                    for (auto [a, b] : t.incident_edges(q)) {
                        out.insertions.push_back({mi, oi, NoiseKind::Cphase, m.delta_phi, {a, b}});
                    }
                    out.insertions.push_back({mi, oi, NoiseKind::Depolarizing, m.p1, {q}});
                    break;
                }
                case GateType::CZ:
                    if (!t.adjacent(op.qubits[0], op.qubits[1])) {
                        throw std::invalid_argument("CZ on uncoupled qubits");
                    }
                    out.insertions.push_back({mi, oi, NoiseKind::Rxxyy, m.theta, op.qubits});
                    out.insertions.push_back({mi, oi, NoiseKind::Depolarizing, m.p2, op.qubits});
                    break;
                default:
                    break;
            }
        }
    }
    return out;
}

namespace {

void apply_insertion(ComplexMatrix &rho, const NoiseInsertion &ins, std::size_t n) {
    switch (ins.kind) {
        case NoiseKind::Cphase:
            if (ins.parameter != 0) {
                kernels::conjugate(rho, matrix_of(GateKind::cphase(ins.parameter)), ins.qubits, n);
            }
            break;
        case NoiseKind::Rxxyy:
            if (ins.parameter != 0) {
                kernels::conjugate(rho, matrix_of(GateKind::rxxyy(ins.parameter)), ins.qubits, n);
            }
            break;
        case NoiseKind::Depolarizing:
            if (ins.parameter != 0) {
                kernels::depolarize(rho, ins.parameter, ins.qubits, n);
            }
            break;
    }
}

}  // namespace

DensityMatrix simulate(const NoisyCircuit &c) {
    std::size_t n = c.base.qubit_count();
    if (n > kMaxQubits) {
        throw std::invalid_argument("register too large for dense simulation");
    }
    ComplexMatrix rho = DensityMatrix::ground_state(n).matrix();
    std::size_t next = 0;
    const auto &moments = c.base.moments();
    for (std::size_t mi = 0; mi < moments.size(); mi++) {
        for (std::size_t oi = 0; oi < moments[mi].size(); oi++) {
            const auto &op = moments[mi][oi];
            kernels::conjugate(rho, matrix_of(op.gate), op.qubits, n);
            while (next < c.insertions.size() && c.insertions[next].moment == mi && c.insertions[next].op_index == oi) {
                apply_insertion(rho, c.insertions[next], n);
                next++;
            }
        }
    }
    return DensityMatrix::assume_valid(std::move(rho));
}

DensityMatrix simulate(const Circuit &c) {
    return simulate(NoisyCircuit{c, {}});
}

double xeb_fidelity_from_depolarization(double p, std::size_t d) {
    if (!(p >= 0 && p <= 1) || d < 2) {
        throw std::invalid_argument("need p in [0, 1] and d >= 2");
    }
    double dd = static_cast<double>(d);
    return 1.0 - (dd - 1.0) / dd * p;
}

double average_gate_fidelity(const ComplexMatrix &u, const ComplexMatrix &u_target) {
    if (u.rows() != u_target.rows() || u.cols() != u_target.cols() || u.rows() != u.cols()) {
        throw std::invalid_argument("matrix dimensions differ");
    }
    double d = static_cast<double>(u.rows());
    double self = (u.adjoint() * u).trace().real();
    double overlap = std::norm((u_target.adjoint() * u).trace());
    return (self + overlap) / (d * (d + 1));
}

double zz_phase_infidelity(double delta_phi) {
    return 0.3 * (1.0 - std::cos(delta_phi));
}

double exchange_infidelity(double theta) {
    double c = std::cos(theta / 2);
    return (12.0 - 8.0 * c - 4.0 * c * c) / 20.0;
}

GateFidelityReport fidelity_report(const NoiseModel &m) {
    m.validate();
    std::size_t d1 = m.depol_dimension_convention == DepolDimensionConvention::PairSubspace ? 4 : 2;
    GateFidelityReport r;
    r.single_qubit_depolarizing_fidelity = xeb_fidelity_from_depolarization(m.p1, d1);
    r.single_qubit_zz_infidelity = zz_phase_infidelity(m.delta_phi);
    r.two_qubit_depolarizing_fidelity = xeb_fidelity_from_depolarization(m.p2, 4);
    r.two_qubit_exchange_infidelity = exchange_infidelity(m.theta);
    r.two_qubit_combined_fidelity = r.two_qubit_depolarizing_fidelity - r.two_qubit_exchange_infidelity;
    return r;
}

}  // namespace walkqed
